"""Stabilizer generators and groups of graph states, and the states themselves.

The generator attached to vertex j is X on qubit j and Z on each of its
graph neighbours. The full group is materialised as one element per
generator subset, with exact phase tracking, so signs come out right
without any numerics. State vectors are built by applying CZ along each
edge to the uniform superposition.

Local single-qubit gates are specified as words over {H, X, Y, Z, S},
applied left-to-right as written (the first letter acts on the state
first). The same words drive exact Clifford conjugation of Pauli words,
which is how the experimentally rotated basis of the box cluster and
local-complementation witnesses are handled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ValidationError
from .graphs import Graph
from .pauli import PauliString, StateVector, VECTOR_QUBIT_CAP

GROUP_QUBIT_CAP = 20

_SQRT2 = np.sqrt(2.0)

_GATES = {
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / _SQRT2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
}

# g P g^dagger on one qubit: (x, z) -> (x', z', sign)
_CONJ = {
    "H": {(1, 0): (0, 1, 1), (0, 1): (1, 0, 1), (1, 1): (1, 1, -1)},
    "X": {(1, 0): (1, 0, 1), (0, 1): (0, 1, -1), (1, 1): (1, 1, -1)},
    "Y": {(1, 0): (1, 0, -1), (0, 1): (0, 1, -1), (1, 1): (1, 1, 1)},
    "Z": {(1, 0): (1, 0, -1), (0, 1): (0, 1, 1), (1, 1): (1, 1, -1)},
    "S": {(1, 0): (1, 1, 1), (0, 1): (0, 1, 1), (1, 1): (1, 0, -1)},
}


@dataclass(frozen=True)
class StabilizerElement:
    """One group element: the generator subset and the resulting word."""

    subset: int
    word: PauliString


def graph_generators(g: Graph) -> list[PauliString]:
    """The n stabilizer generators: X at the vertex, Z on its neighbours."""
    gens = []
    for j in range(g.n):
        x = 1 << j
        z = 0
        for i in g.neighbors(j):
            z |= 1 << i
        gens.append(PauliString(g.n, x, z, 0))
    return gens


def stabilizer_group(g: Graph) -> list[StabilizerElement]:
    """All 2^n products of generators, indexed by generator subset."""
    if g.n > GROUP_QUBIT_CAP:
        raise CapacityError(
            f"stabilizer groups are capped at {GROUP_QUBIT_CAP} qubits, got n={g.n}"
        )
    gens = graph_generators(g)
    words = [PauliString.identity(g.n)] * (1 << g.n)
    for subset in range(1, 1 << g.n):
        low = subset & -subset
        words[subset] = words[subset ^ low] * gens[low.bit_length() - 1]
    return [StabilizerElement(s, w) for s, w in enumerate(words)]


def graph_state_vector(g: Graph) -> StateVector:
    """CZ along every edge applied to |+>^n."""
    if g.n > VECTOR_QUBIT_CAP:
        raise CapacityError(
            f"state vectors are capped at {VECTOR_QUBIT_CAP} qubits, got n={g.n}"
        )
    dim = 1 << g.n
    amps = np.full(dim, 1.0 / np.sqrt(dim), dtype=complex)
    idx = np.arange(dim)
    for u, v in g.sorted_edges():
        both = ((idx >> (g.n - 1 - u)) & 1) & ((idx >> (g.n - 1 - v)) & 1)
        amps[both == 1] *= -1.0
    return StateVector(g.n, amps)


def _apply_gate(amps: np.ndarray, n: int, qubit: int, gate: np.ndarray) -> np.ndarray:
    left = 1 << qubit
    right = 1 << (n - 1 - qubit)
    view = amps.reshape(left, 2, right)
    out = np.empty_like(view)
    out[:, 0, :] = gate[0, 0] * view[:, 0, :] + gate[0, 1] * view[:, 1, :]
    out[:, 1, :] = gate[1, 0] * view[:, 0, :] + gate[1, 1] * view[:, 1, :]
    return out.reshape(-1)


def apply_local_unitaries(state: StateVector, words) -> StateVector:
    """Apply one gate word per qubit, letters acting left-to-right."""
    words = list(words)
    if len(words) != state.n:
        raise ValidationError(
            f"need one gate word per qubit ({state.n}), got {len(words)}"
        )
    amps = state.amplitudes.copy()
    for qubit, word in enumerate(words):
        for ch in word:
            gate = _GATES.get(ch.upper())
            if gate is None:
                raise ValidationError(f"unknown gate letter {ch!r} (use H, X, Y, Z, S)")
            amps = _apply_gate(amps, state.n, qubit, gate)
    return StateVector(state.n, amps)


def conjugate_by_local_words(p: PauliString, words) -> PauliString:
    """Exact V p V^dagger where V is the unitary of apply_local_unitaries(words).

    Gates are applied to the word in the same time order as they would act
    on a state, so conjugating a stabilizer of |psi> by the words that map
    |psi> to |phi> yields a stabilizer of |phi>.
    """
    words = list(words)
    if len(words) != p.n:
        raise ValidationError(f"need one gate word per qubit ({p.n}), got {len(words)}")
    x, z, phase_exp = p.x_bits, p.z_bits, p.phase_exp
    for qubit, word in enumerate(words):
        for ch in word:
            table = _CONJ.get(ch.upper())
            if table is None:
                raise ValidationError(f"unknown gate letter {ch!r} (use H, X, Y, Z, S)")
            bits = ((x >> qubit) & 1, (z >> qubit) & 1)
            if bits == (0, 0):
                continue
            nx, nz, sign = table[bits]
            x = (x & ~(1 << qubit)) | (nx << qubit)
            z = (z & ~(1 << qubit)) | (nz << qubit)
            if sign < 0:
                phase_exp += 2
    return PauliString(p.n, x, z, phase_exp)


def local_complement_words(g: Graph, v: int) -> list[str]:
    """Gate words realising local complementation at v on the state level.

    sqrt(-iX) on v is HSH up to global phase; sqrt(iZ) on each neighbour
    is S followed by Z. Applying these to |G> gives |G*v> up to phase.
    """
    nbrs = g.neighbors(v)
    words = []
    for j in range(g.n):
        if j == v:
            words.append("HSH")
        elif j in nbrs:
            words.append("SZ")
        else:
            words.append("")
    return words
