"""Exact n-qubit Pauli word algebra and Pauli expectation values.

A Pauli word is stored in symplectic bit-pair form: two n-bit masks
``x_bits`` and ``z_bits`` plus a power of i. Bit j of a mask refers to
qubit j, and the letter on qubit j is

    (x, z) = (0, 0) -> I,  (1, 0) -> X,  (0, 1) -> Z,  (1, 1) -> Y.

The stored phase is canonical with respect to the *letter* form: the
operator represented is ``i**phase_exp * (L_0 (x) L_1 (x) ... (x) L_{n-1})``
where L_j is the letter above. In particular Y itself has phase_exp 0;
the i factor of Y = iXZ is folded in at construction, so equality of two
words is a plain field comparison. A word is Hermitian iff its phase is
real (phase_exp in {0, 2}).

Qubit 0 is the leftmost letter in text form and the most significant bit
of a state index, i.e. ``XZ`` acting on ``|q0 q1>`` is X on q0.

Matrices are only materialised up to ``DENSE_QUBIT_CAP`` qubits;
matrix-free state-vector evaluation works up to ``VECTOR_QUBIT_CAP``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CapacityError,
    ContractError,
    DimensionError,
    NumericalError,
    PauliParseError,
    ValidationError,
)

DENSE_QUBIT_CAP = 10
VECTOR_QUBIT_CAP = 20

NORM_ATOL = 1e-10
HERMITICITY_ATOL = 1e-10
TRACE_ATOL = 1e-10
PSD_EIG_FLOOR = -1e-8
IMAG_RESIDUE_ATOL = 1e-8

_LETTERS = "IXZY"  # indexed by x + 2*z
_LETTER_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}

_SINGLE_QUBIT = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_PHASES = (1, 1j, -1, -1j)  # i**k for k = 0..3


def _popcount(v: int) -> int:
    return bin(v).count("1")


def _parity_array(v: np.ndarray) -> np.ndarray:
    """Bitwise parity of each entry of an integer array."""
    v = v.copy()
    v ^= v >> 32
    v ^= v >> 16
    v ^= v >> 8
    v ^= v >> 4
    v ^= v >> 2
    v ^= v >> 1
    return v & 1


@dataclass(frozen=True)
class PauliString:
    """A signed n-qubit Pauli word in symplectic bit-pair form."""

    n: int
    x_bits: int
    z_bits: int
    phase_exp: int = 0  # operator = i**phase_exp * tensor of letters

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"need at least one qubit, got n={self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValidationError("bit masks use bits beyond the qubit count")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors ------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0, 0)

    @classmethod
    def from_letters(cls, letters: str, sign: int = 1) -> "PauliString":
        """Build from a letter string like ``"XZII"``; sign is +1 or -1."""
        if sign not in (1, -1):
            raise ValidationError(f"sign must be +1 or -1, got {sign}")
        x = z = 0
        for j, ch in enumerate(letters):
            if ch not in _LETTER_BITS:
                raise PauliParseError(f"bad Pauli letter {ch!r} at position {j}", j)
            xb, zb = _LETTER_BITS[ch]
            x |= xb << j
            z |= zb << j
        return cls(len(letters), x, z, 0 if sign == 1 else 2)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, sign: int = 1) -> "PauliString":
        if not 0 <= qubit < n:
            raise ValidationError(f"qubit {qubit} out of range for n={n}")
        word = ["I"] * n
        word[qubit] = letter
        return cls.from_letters("".join(word), sign)

    # -- inspection --------------------------------------------------

    @property
    def phase(self) -> complex:
        """The phase as a number in {1, -1, 1j, -1j}."""
        return _PHASES[self.phase_exp]

    @property
    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def sign(self) -> int:
        """+1 or -1 for Hermitian words; raises otherwise."""
        if not self.is_hermitian:
            raise ContractError(f"{self} has imaginary phase, no real sign")
        return 1 if self.phase_exp == 0 else -1

    def letter(self, qubit: int) -> str:
        x = (self.x_bits >> qubit) & 1
        z = (self.z_bits >> qubit) & 1
        return _LETTERS[x + 2 * z]

    def letters(self) -> str:
        return "".join(self.letter(j) for j in range(self.n))

    @property
    def weight(self) -> int:
        """Number of non-identity letters."""
        return _popcount(self.x_bits | self.z_bits)

    def __str__(self) -> str:
        prefix = {0: "+", 1: "+i", 2: "-", 3: "-i"}[self.phase_exp]
        return prefix + self.letters()

    def __mul__(self, other: "PauliString") -> "PauliString":
        return pauli_multiply(self, other)

    def negate(self) -> "PauliString":
        return PauliString(self.n, self.x_bits, self.z_bits, self.phase_exp + 2)


def format_pauli(p: PauliString) -> str:
    """Canonical text form: explicit sign prefix followed by the letters."""
    return str(p)


def parse_pauli(text: str, n: int) -> PauliString:
    """Parse an optional +/- sign followed by n letters from {I, X, Y, Z}.

    Whitespace anywhere in the string is ignored, so the spaced table
    style ``"- Z X X I"`` parses the same as ``"-ZXXI"``. Parse errors
    report the 0-based letter position.
    """
    compact = "".join(text.split())
    sign = 1
    if compact[:1] in "+-":
        sign = -1 if compact[0] == "-" else 1
        compact = compact[1:]
    if len(compact) != n:
        raise PauliParseError(
            f"expected {n} Pauli letters, got {len(compact)} in {text!r}"
        )
    for j, ch in enumerate(compact):
        if ch not in _LETTER_BITS:
            raise PauliParseError(f"bad Pauli letter {ch!r} at position {j}", j)
    return PauliString.from_letters(compact, sign)


def pauli_multiply(p: PauliString, q: PauliString) -> PauliString:
    """Operator product p*q with exact phase tracking."""
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {q.n}")
    # Convert letter-canonical phases to X-then-Z form, compose, convert back.
    e = p.phase_exp + _popcount(p.x_bits & p.z_bits)
    e += q.phase_exp + _popcount(q.x_bits & q.z_bits)
    e += 2 * _popcount(p.z_bits & q.x_bits)  # Z^z1 past X^x2
    x = p.x_bits ^ q.x_bits
    z = p.z_bits ^ q.z_bits
    return PauliString(p.n, x, z, e - _popcount(x & z))


def pauli_commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic form <p.x, q.z> + <p.z, q.x> is even."""
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {q.n}")
    return (_popcount(p.x_bits & q.z_bits) + _popcount(p.z_bits & q.x_bits)) % 2 == 0


def _index_mask(mask: int, n: int) -> int:
    """Map a qubit-indexed mask to a state-index mask (qubit 0 = MSB)."""
    out = 0
    for j in range(n):
        if (mask >> j) & 1:
            out |= 1 << (n - 1 - j)
    return out


def pauli_to_matrix(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the word; qubit 0 is the leftmost factor."""
    if p.n > DENSE_QUBIT_CAP:
        raise CapacityError(
            f"dense matrices are capped at {DENSE_QUBIT_CAP} qubits, got n={p.n}"
        )
    m = np.array([[p.phase]], dtype=complex)
    for j in range(p.n):
        m = np.kron(m, _SINGLE_QUBIT[p.letter(j)])
    return m


def _apply_factors(p: PauliString):
    """Per-basis-state action: P|b> = coeff[b] |b ^ x_idx>."""
    n = p.n
    x_idx = _index_mask(p.x_bits, n)
    z_idx = _index_mask(p.z_bits, n)
    idx = np.arange(1 << n, dtype=np.int64)
    signs = 1 - 2 * _parity_array(idx & z_idx)
    front = _PHASES[(p.phase_exp + _popcount(p.x_bits & p.z_bits)) % 4]
    return x_idx, front * signs.astype(complex)


def apply_pauli(p: PauliString, amplitudes: np.ndarray) -> np.ndarray:
    """Apply the word to a state vector in O(2^n) without forming a matrix."""
    x_idx, coeff = _apply_factors(p)
    idx = np.arange(amplitudes.size, dtype=np.int64)
    out = np.empty_like(amplitudes)
    out[idx ^ x_idx] = coeff * amplitudes
    return out


@dataclass(frozen=True)
class StateVector:
    """A normalised pure state on n qubits (qubit 0 = most significant bit)."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 1 << self.n:
            raise DimensionError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got {amps.size}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValidationError(f"state vector norm {norm} is not 1")
        object.__setattr__(self, "amplitudes", amps)

    def overlap(self, other: "StateVector") -> complex:
        if self.n != other.n:
            raise DimensionError(f"qubit counts differ: {self.n} vs {other.n}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def fidelity(self, other: "StateVector") -> float:
        return abs(self.overlap(other)) ** 2

    def density_matrix(self) -> "DensityMatrix":
        if self.n > DENSE_QUBIT_CAP:
            raise CapacityError(
                f"dense density matrices are capped at {DENSE_QUBIT_CAP} qubits"
            )
        return DensityMatrix(self.n, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix on n qubits."""

    n: int
    entries: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.entries, dtype=complex)
        dim = 1 << self.n
        if rho.shape != (dim, dim):
            raise DimensionError(
                f"expected a {dim}x{dim} matrix for n={self.n}, got {rho.shape}"
            )
        if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_ATOL:
            raise ValidationError("density matrix is not Hermitian")
        tr = np.trace(rho)
        if abs(tr - 1.0) > TRACE_ATOL:
            raise ValidationError(f"density matrix trace {tr} is not 1")
        if np.min(np.linalg.eigvalsh(rho)) < PSD_EIG_FLOOR:
            raise ValidationError("density matrix has a significantly negative eigenvalue")
        object.__setattr__(self, "entries", rho)


def pauli_expectation(p: PauliString, state: StateVector | DensityMatrix) -> float:
    """<state|p|state> (or Tr[p rho]) for a Hermitian word.

    State vectors are handled matrix-free in O(2^n); density matrices via
    an O(4^n) gather along the permuted diagonal. The imaginary residue is
    checked against IMAG_RESIDUE_ATOL and then discarded.
    """
    if not p.is_hermitian:
        raise ContractError(f"expectation of non-Hermitian word {p}")
    if isinstance(state, StateVector):
        if p.n != state.n:
            raise DimensionError(f"qubit counts differ: {p.n} vs {state.n}")
        if p.n > VECTOR_QUBIT_CAP:
            raise CapacityError(
                f"state-vector evaluation is capped at {VECTOR_QUBIT_CAP} qubits"
            )
        value = complex(np.vdot(state.amplitudes, apply_pauli(p, state.amplitudes)))
    elif isinstance(state, DensityMatrix):
        if p.n != state.n:
            raise DimensionError(f"qubit counts differ: {p.n} vs {state.n}")
        x_idx, coeff = _apply_factors(p)
        idx = np.arange(1 << p.n, dtype=np.int64)
        # Tr[P rho] = sum_b coeff[b] rho[b, b ^ x]
        value = complex(np.sum(coeff * state.entries[idx, idx ^ x_idx]))
    else:
        raise ValidationError(f"unsupported state type {type(state).__name__}")
    if abs(value.imag) > IMAG_RESIDUE_ATOL:
        raise NumericalError(f"imaginary residue {value.imag} exceeds tolerance")
    return float(value.real)


def fraction_or_float(value) -> Fraction | float:
    """Coerce exact inputs to Fraction, everything else to float."""
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    return float(value)
