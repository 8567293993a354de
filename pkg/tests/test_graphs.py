"""Graph presets, local complementation, and LC-orbit equivalence."""

import pytest

from graphbell import (
    DimensionError,
    Graph,
    ValidationError,
    lc_equivalent,
    local_complement,
    make_named_graph,
)
from graphbell.errors import CapacityError


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ValidationError):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValidationError):
            Graph.from_edges(2, [(0, 2)])

    def test_edges_are_normalized(self):
        g = Graph.from_edges(3, [(2, 0), (0, 2), (1, 0)])
        assert g.sorted_edges() == [(0, 1), (0, 2)]

    def test_json_round_trip(self):
        g = make_named_graph("ec", 3)
        assert Graph.from_json(g.to_json()) == g

    def test_json_rejects_garbage(self):
        with pytest.raises(ValidationError):
            Graph.from_json("{not json")
        with pytest.raises(ValidationError):
            Graph.from_json('{"n": 2}')


class TestPresets:
    def test_box4_is_degree_two_everywhere(self):
        g = make_named_graph("box4")
        assert g.n == 4 and len(g.edges) == 4
        assert all(g.degree(v) == 2 for v in range(4))
        assert g.sorted_edges() == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_complete_graph_edge_count(self):
        assert len(make_named_graph("ghz_complete", 4).edges) == 6

    def test_ec1_is_three_vertex_path(self):
        g = make_named_graph("ec", 1)
        assert g.n == 3
        assert g.sorted_edges() == [(0, 1), (1, 2)]

    def test_ec2_is_a_relabelled_box(self):
        ok, _ = lc_equivalent(make_named_graph("ec", 2), make_named_graph("box4"),
                              up_to_permutation=True)
        assert ok
        # in fact ec(2) is already a 4-cycle, no complementation needed
        assert all(make_named_graph("ec", 2).degree(v) == 2 for v in range(4))

    def test_linear(self):
        g = make_named_graph("linear", 5)
        assert g.sorted_edges() == [(0, 1), (1, 2), (2, 3), (3, 4)]

    def test_ec3_lc_shape(self):
        g = make_named_graph("ec3_lc")
        assert g.n == 5 and len(g.edges) == 7
        assert g.degree(4) == 1 and g.has_edge(0, 4)

    def test_single_vertex(self):
        g = make_named_graph("single_vertex")
        assert g.n == 1 and not g.edges

    def test_unknown_preset(self):
        with pytest.raises(ValidationError):
            make_named_graph("dodecahedron")

    def test_size_required(self):
        with pytest.raises(ValidationError):
            make_named_graph("linear")


class TestLocalComplement:
    def test_path_center_becomes_triangle(self):
        g = local_complement(make_named_graph("linear", 3), 1)
        assert g.sorted_edges() == [(0, 1), (0, 2), (1, 2)]

    def test_star_center_becomes_complete(self):
        for n in (3, 4, 6):
            star = make_named_graph("ghz_star", n)
            assert local_complement(star, 0) == make_named_graph("ghz_complete", n)

    def test_involution_everywhere(self):
        g = make_named_graph("ec", 3)
        for v in range(g.n):
            assert local_complement(local_complement(g, v), v) == g

    def test_vertex_range(self):
        with pytest.raises(ValidationError):
            local_complement(make_named_graph("box4"), 9)


class TestLcEquivalent:
    def test_graph_equals_itself_with_empty_witness(self):
        g = make_named_graph("linear", 4)
        assert lc_equivalent(g, g) == (True, [])

    def test_ec3_pair_identity_labels(self):
        ok, witness = lc_equivalent(make_named_graph("ec", 3), make_named_graph("ec3_lc"))
        assert ok
        g = make_named_graph("ec", 3)
        for v in witness:
            g = local_complement(g, v)
        assert g == make_named_graph("ec3_lc")

    def test_ec3_pair_with_permutations(self):
        ok, witness = lc_equivalent(
            make_named_graph("ec", 3), make_named_graph("ec3_lc"), up_to_permutation=True
        )
        assert ok and witness is not None

    def test_middle_then_pole_is_an_accepted_witness(self):
        g = local_complement(make_named_graph("ec", 3), 1)  # middle vertex
        g = local_complement(g, 0)  # pole
        assert g == make_named_graph("ec3_lc")

    def test_complete_vs_linear_distinct_orbits(self):
        ok, witness = lc_equivalent(
            make_named_graph("ghz_complete", 4), make_named_graph("linear", 4)
        )
        assert not ok and witness is None

    def test_star_complete_orbit(self):
        ok, witness = lc_equivalent(
            make_named_graph("ghz_star", 5), make_named_graph("ghz_complete", 5)
        )
        assert ok and witness == [0]

    def test_size_mismatch(self):
        with pytest.raises(DimensionError):
            lc_equivalent(make_named_graph("box4"), make_named_graph("linear", 5))

    def test_capacity_guard(self):
        big = make_named_graph("linear", 9)
        with pytest.raises(CapacityError):
            lc_equivalent(big, big)
