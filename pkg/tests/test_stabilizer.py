"""Stabilizer generators/groups, graph-state vectors, and local unitaries."""

import math

import numpy as np
import pytest

from graphbell import (
    PauliString,
    StateVector,
    ValidationError,
    apply_local_unitaries,
    conjugate_by_local_words,
    format_pauli,
    graph_generators,
    graph_state_vector,
    local_complement,
    local_complement_words,
    make_named_graph,
    pauli_commutes,
    pauli_expectation,
    pauli_to_matrix,
    stabilizer_group,
)

from conftest import kron_word, random_state, states_match_up_to_phase

CZ = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)


def group_signed_words(g):
    return {e.word.letters(): e.word.sign for e in stabilizer_group(g)}


class TestGenerators:
    def test_single_vertex(self):
        gens = graph_generators(make_named_graph("single_vertex"))
        assert [format_pauli(p) for p in gens] == ["+X"]

    def test_complete_graph_pattern(self):
        gens = graph_generators(make_named_graph("ghz_complete", 4))
        assert [p.letters() for p in gens] == ["XZZZ", "ZXZZ", "ZZXZ", "ZZZX"]

    def test_linear4_generators(self):
        gens = graph_generators(make_named_graph("linear", 4))
        assert [p.letters() for p in gens] == ["XZII", "ZXZI", "IZXZ", "IIZX"]
        assert all(p.sign == 1 for p in gens)

    def test_pairwise_commuting(self):
        for name, n in [("linear", 6), ("ghz_complete", 5), ("ec", 3)]:
            gens = graph_generators(make_named_graph(name, n))
            for i, p in enumerate(gens):
                for q in gens[i:]:
                    assert pauli_commutes(p, q)


class TestGroup:
    def test_empty_graph_two_qubits(self):
        words = {format_pauli(e.word) for e in stabilizer_group(make_named_graph("empty", 2))}
        assert words == {"+II", "+XI", "+IX", "+XX"}

    def test_linear4_matches_expected_signed_words(self):
        expected = {
            "IIII": 1, "XZII": 1, "ZXZI": 1, "YYZI": 1,
            "IZXZ": 1, "XIXZ": 1, "ZYYZ": 1, "YXYZ": -1,
            "IIZX": 1, "XZZX": 1, "ZXIX": 1, "YYIX": 1,
            "IZYY": 1, "XIYY": 1, "ZYXY": -1, "YXXY": 1,
        }
        assert group_signed_words(make_named_graph("linear", 4)) == expected

    def test_group_order_and_reality(self):
        for name, n in [("linear", 5), ("ec", 3), ("ghz_complete", 4)]:
            g = make_named_graph(name, n)
            elements = stabilizer_group(g)
            assert len(elements) == 1 << g.n
            assert len({(e.word.x_bits, e.word.z_bits) for e in elements}) == 1 << g.n
            assert all(e.word.phase in (1, -1) for e in elements)

    def test_closure_with_signs(self):
        g = make_named_graph("ec", 2)
        elements = stabilizer_group(g)
        for a in elements[:8]:
            for b in elements[8:]:
                prod = a.word * b.word
                assert prod == elements[a.subset ^ b.subset].word


class TestGraphStateVector:
    def test_single_vertex_is_plus(self):
        state = graph_state_vector(make_named_graph("single_vertex"))
        assert np.allclose(state.amplitudes, [1 / math.sqrt(2)] * 2)

    def test_cz_equals_exponentiated_coupling(self):
        # diag(1,1,1,-1) against exp(-i pi/4 (1-Z)x(1-Z))
        h_cp = kron_word("II") - kron_word("ZI") - kron_word("IZ") + kron_word("ZZ")
        eigvals, eigvecs = np.linalg.eigh(h_cp)
        expm = eigvecs @ np.diag(np.exp(-1j * eigvals * math.pi / 4)) @ eigvecs.conj().T
        assert np.max(np.abs(expm - CZ)) < 1e-12

    def test_star_state_stabilized_by_all_generators(self):
        g = make_named_graph("ghz_star", 6)
        state = graph_state_vector(g)
        for gen in graph_generators(g):
            assert pauli_expectation(gen, state) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize(
        "name,n",
        [("linear", 4), ("box4", None), ("ec", 1), ("ec", 3), ("ec", 5),
         ("ec3_lc", None), ("ghz_complete", 8)],
    )
    def test_eigenstate_property_all_elements(self, name, n):
        g = make_named_graph(name, n) if n else make_named_graph(name)
        state = graph_state_vector(g)
        for element in stabilizer_group(g):
            assert pauli_expectation(element.word, state) == pytest.approx(1.0, abs=1e-10)

    def test_eigenstate_property_large_instances(self):
        for g in (make_named_graph("ghz_complete", 12), make_named_graph("linear", 12)):
            state = graph_state_vector(g)
            for element in stabilizer_group(g):
                assert abs(pauli_expectation(element.word, state) - 1.0) < 1e-10

    def test_projector_identity_dense(self):
        for name, n in [("linear", 4), ("box4", None), ("ec", 3), ("ghz_complete", 6)]:
            g = make_named_graph(name, n) if n else make_named_graph(name)
            dim = 1 << g.n
            total = np.zeros((dim, dim), dtype=complex)
            for element in stabilizer_group(g):
                total += pauli_to_matrix(element.word)
            total /= dim
            amps = graph_state_vector(g).amplitudes
            assert np.max(np.abs(total - np.outer(amps, amps.conj()))) < 1e-10

    def test_projector_identity_random_probes_beyond_dense_cap(self, rng):
        # quadratic-form probes: v+ B v must equal |<G|v>|^2
        from graphbell.pauli import apply_pauli

        for g in (make_named_graph("linear", 11), make_named_graph("ghz_complete", 12)):
            elements = stabilizer_group(g)
            amps = graph_state_vector(g).amplitudes
            for _ in range(100):
                v = random_state(g.n, rng)
                acc = np.zeros_like(v)
                for element in elements:
                    acc += apply_pauli(element.word, v)
                quad = np.vdot(v, acc).real / (1 << g.n)
                assert quad == pytest.approx(abs(np.vdot(amps, v)) ** 2, abs=1e-10)


class TestLocalUnitaries:
    def test_hadamard_makes_plus(self):
        zero = StateVector(1, [1, 0])
        out = apply_local_unitaries(zero, ["H"])
        assert np.allclose(out.amplitudes, [1 / math.sqrt(2)] * 2)

    def test_empty_words_do_nothing(self):
        state = graph_state_vector(make_named_graph("box4"))
        out = apply_local_unitaries(state, ["", "", "", ""])
        assert np.allclose(out.amplitudes, state.amplitudes)

    def test_norm_preserved(self, rng):
        state = StateVector(3, random_state(3, rng))
        out = apply_local_unitaries(state, ["HS", "XZ", "SSH"])
        assert abs(np.linalg.norm(out.amplitudes) - 1.0) < 1e-12

    def test_unknown_gate(self):
        with pytest.raises(ValidationError):
            apply_local_unitaries(StateVector(1, [1, 0]), ["Q"])

    def test_word_count_mismatch(self):
        with pytest.raises(ValidationError):
            apply_local_unitaries(StateVector(2, [1, 0, 0, 0]), ["H"])

    def test_box_corrections_produce_the_rotated_state(self):
        state = graph_state_vector(make_named_graph("box4"))
        rotated = apply_local_unitaries(state, ["HXZ", "HX", "HX", "HXZ"])
        target = np.zeros(16, dtype=complex)
        target[0b0000] = 0.5
        target[0b0110] = -0.5
        target[0b1001] = -0.5
        target[0b1111] = -0.5
        assert states_match_up_to_phase(rotated.amplitudes, target)

    def test_inverse_corrections_recover_the_box_state(self):
        target = np.zeros(16, dtype=complex)
        target[0b0000] = 0.5
        target[0b0110] = -0.5
        target[0b1001] = -0.5
        target[0b1111] = -0.5
        # reversing each word inverts the product of self-inverse gates
        restored = apply_local_unitaries(
            StateVector(4, target), ["ZXH", "XH", "XH", "ZXH"]
        )
        box = graph_state_vector(make_named_graph("box4"))
        assert abs(restored.fidelity(box) - 1.0) < 1e-10


class TestConjugation:
    @pytest.mark.parametrize("word", ["H", "X", "Y", "Z", "S", "HS", "HXZ", "SSH"])
    def test_single_qubit_rules_match_dense(self, word, rng):
        u = np.eye(2, dtype=complex)
        from graphbell.stabilizer import _GATES

        for ch in word:
            u = _GATES[ch] @ u  # letters act in time order
        for letters in ("X", "Y", "Z"):
            p = PauliString.from_letters(letters)
            conj = conjugate_by_local_words(p, [word])
            dense = u @ kron_word(letters) @ u.conj().T
            assert np.max(np.abs(dense - pauli_to_matrix(conj))) < 1e-12

    def test_multi_qubit_random_words(self, rng):
        gates = "HXYZS"
        for _ in range(25):
            n = int(rng.integers(1, 4))
            words = ["".join(rng.choice(list(gates)) for _ in range(int(rng.integers(0, 4))))
                     for _ in range(n)]
            letters = "".join(rng.choice(list("IXYZ")) for _ in range(n))
            p = PauliString.from_letters(letters)
            got = conjugate_by_local_words(p, words)

            from graphbell.stabilizer import _GATES

            full = np.array([[1.0]], dtype=complex)
            for word in words:
                u = np.eye(2, dtype=complex)
                for ch in word:
                    u = _GATES[ch] @ u
                full = np.kron(full, u)
            dense = full @ kron_word(letters) @ full.conj().T
            assert np.max(np.abs(dense - pauli_to_matrix(got))) < 1e-12

    def test_conjugated_generators_stabilize_the_corrected_state(self):
        g = make_named_graph("box4")
        words = ["HXZ", "HX", "HX", "HXZ"]
        rotated = apply_local_unitaries(graph_state_vector(g), words)
        for gen in graph_generators(g):
            conj = conjugate_by_local_words(gen, words)
            assert pauli_expectation(conj, rotated) == pytest.approx(1.0, abs=1e-12)


class TestLocalComplementWords:
    @pytest.mark.parametrize(
        "name,n,vertex",
        [("linear", 3, 1), ("linear", 5, 2), ("ghz_star", 5, 0), ("box4", None, 1),
         ("ec", 3, 1), ("ec", 3, 0)],
    )
    def test_words_realize_complementation(self, name, n, vertex):
        g = make_named_graph(name, n) if n else make_named_graph(name)
        moved = apply_local_unitaries(
            graph_state_vector(g), local_complement_words(g, vertex)
        )
        target = graph_state_vector(local_complement(g, vertex))
        assert abs(moved.fidelity(target) - 1.0) < 1e-10
