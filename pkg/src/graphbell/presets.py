"""Named analysis targets: graphs, optional local-basis corrections, bounds.

A preset bundles the underlying graph with the gate words that rotate it
into the basis actually prepared (only bc4-hat uses this) and the default
method for its LHV bound. ``bc4-hat`` is the box cluster conjugated by
the per-qubit correction words H X Z / H X / H X / H X Z, matching the
state (|0000> - |0110> - |1001> - |1111>)/2.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .bell import SignedPauliSum, bell_operator_from_words, graph_bell_operator
from .errors import ValidationError
from .graphs import Graph, make_named_graph
from .lhv import LhvBound, ghz_graph_bound, lhv_max, product_bound
from .pauli import StateVector
from .stabilizer import (
    StabilizerElement,
    apply_local_unitaries,
    conjugate_by_local_words,
    graph_state_vector,
    stabilizer_group,
)

GHZ_PRESET_RANGE = range(2, 15)

BC4_HAT_CORRECTIONS = ("HXZ", "HX", "HX", "HXZ")


@dataclass(frozen=True)
class PresetSpec:
    name: str
    graph: Graph
    corrections: tuple | None = None  # gate words, one per qubit
    bound_method: str = "brute"  # "brute" | "product" | "ghz"

    @property
    def n(self) -> int:
        return self.graph.n


def _ghz_number(name: str) -> int | None:
    m = re.fullmatch(r"ghz(\d+)", name)
    return int(m.group(1)) if m else None


def resolve_graph_arg(arg: str) -> PresetSpec:
    """Map a CLI --graph argument (preset name or JSON file path) to a spec."""
    name = arg.lower()
    if name == "lc4":
        return PresetSpec("lc4", make_named_graph("linear", 4))
    if name == "bc4":
        return PresetSpec("bc4", make_named_graph("box4"))
    if name == "bc4-hat":
        return PresetSpec("bc4-hat", make_named_graph("box4"), BC4_HAT_CORRECTIONS)
    if name == "ec1":
        return PresetSpec("ec1", make_named_graph("ec", 1))
    if name == "ec3":
        return PresetSpec("ec3", make_named_graph("ec", 3), None, "product")
    if name == "ec3-lc":
        return PresetSpec("ec3-lc", make_named_graph("ec3_lc"))
    if name == "ec5":
        return PresetSpec("ec5", make_named_graph("ec", 5), None, "product")
    ghz_n = _ghz_number(name)
    if ghz_n is not None:
        if ghz_n not in GHZ_PRESET_RANGE:
            raise ValidationError(f"ghz presets cover n = 2..14, got {ghz_n}")
        return PresetSpec(name, make_named_graph("ghz_complete", ghz_n), None, "ghz")
    if os.path.exists(arg) or arg.endswith(".json"):
        try:
            with open(arg, encoding="utf-8") as fh:
                graph = Graph.from_json(fh.read())
        except OSError as exc:
            raise ValidationError(f"cannot read graph file {arg!r}: {exc}") from exc
        return PresetSpec(os.path.basename(arg), graph)
    raise ValidationError(
        f"unknown graph {arg!r}: expected a preset "
        "(lc4, bc4, bc4-hat, ec1, ec3, ec3-lc, ec5, ghz2..ghz14) or a JSON file"
    )


def preset_stabilizer_elements(spec: PresetSpec) -> list[StabilizerElement]:
    elements = stabilizer_group(spec.graph)
    if spec.corrections is None:
        return elements
    return [
        StabilizerElement(e.subset, conjugate_by_local_words(e.word, spec.corrections))
        for e in elements
    ]


def preset_bell_operator(spec: PresetSpec) -> SignedPauliSum:
    if spec.corrections is None:
        return graph_bell_operator(spec.graph)
    return bell_operator_from_words(
        spec.n, (e.word for e in preset_stabilizer_elements(spec))
    )


def preset_state(spec: PresetSpec) -> StateVector:
    state = graph_state_vector(spec.graph)
    if spec.corrections is not None:
        state = apply_local_unitaries(state, spec.corrections)
    return state


def single_vertex_bound() -> LhvBound:
    """D = 1 for the one-vertex graph (its operator is (1 + X)/2)."""
    return lhv_max(graph_bell_operator(make_named_graph("single_vertex")))


def preset_bound(
    spec: PresetSpec, method: str | None = None, restrict_z_to_plus: bool = False
) -> LhvBound:
    """The preset's LHV bound; ``method`` overrides the default choice."""
    method = method or spec.bound_method
    if method == "brute":
        return lhv_max(preset_bell_operator(spec), restrict_z_to_plus)
    if method == "ghz":
        return ghz_graph_bound(spec.n)
    if method == "formula":
        if spec.n % 2:
            raise ValidationError(
                "the closed-form GHZ bound only covers even n; use --method ghz"
            )
        bound = ghz_graph_bound(spec.n)
        return LhvBound(bound.value, "analytic", None, "ghz-even-closed-form", bound.exact)
    if method == "product":
        if spec.name == "ec3":
            parts = [single_vertex_bound(), ghz_graph_bound(4)]
        elif spec.name == "ec5":
            parts = [single_vertex_bound(), ghz_graph_bound(6)]
        else:
            raise ValidationError(
                f"no product factorization is defined for {spec.name!r}"
            )
        return product_bound(parts)
    raise ValidationError(f"unknown bound method {method!r}")
