"""Bell operators: stabilizer sums for graph states and Mermin-Klyshko operators.

Graph Bell operators are the uniformly weighted sum of all 2^n stabilizer
elements, so their coefficients are exactly 2^-n and their expectation on
any state equals the fidelity with the graph state.

Mermin-Klyshko operators are built by the two-settings-per-qubit
recursion. When every measurement direction is a signed Pauli axis the
recursion is carried out symbolically with exact scaled-integer
coefficients; otherwise it falls back to dense matrices. With the x/y
choice on every qubit the result collapses to a two-entry operator
coupling |0...0> and |1...1> with phase (n-1)*pi/4, which is also
available directly in sparse form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, ContractError, DimensionError, ValidationError
from .graphs import Graph
from .pauli import (
    DENSE_QUBIT_CAP,
    DensityMatrix,
    PauliString,
    StateVector,
    pauli_expectation,
    pauli_to_matrix,
)
from .stabilizer import stabilizer_group

BELL_OPERATOR_QUBIT_CAP = 16
MK_DENSE_QUBIT_CAP = 10

_AXES = {
    (1, 0, 0): ("X", 1),
    (-1, 0, 0): ("X", -1),
    (0, 1, 0): ("Y", 1),
    (0, -1, 0): ("Y", -1),
    (0, 0, 1): ("Z", 1),
    (0, 0, -1): ("Z", -1),
}
_AXIS_ATOL = 1e-12

_PAULI_DENSE = {
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_LETTER_BITS = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


class SignedPauliSum:
    """A real-weighted sum of Hermitian Pauli words in canonical order.

    Terms are merged by word, zero terms dropped, and the surviving sign
    is carried by the word itself so coefficients stay positive. Exact
    (Fraction) coefficients are preserved whenever the inputs are exact.
    """

    def __init__(self, n: int, terms):
        self.n = n
        merged = {}
        for coeff, word in terms:
            if word.n != n:
                raise DimensionError(f"term {word} has {word.n} qubits, expected {n}")
            if not word.is_hermitian:
                raise ContractError(f"non-Hermitian term {word} in operator sum")
            key = (word.x_bits, word.z_bits)
            merged[key] = merged.get(key, 0) + coeff * word.sign
        out = []
        for (x, z), signed in sorted(merged.items()):
            if signed == 0:
                continue
            sign = 1 if signed > 0 else -1
            out.append((abs(signed), PauliString(n, x, z, 0 if sign > 0 else 2)))
        self.terms = tuple(out)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SignedPauliSum)
            and self.n == other.n
            and self.terms == other.terms
        )

    def term_map(self) -> dict:
        """Signed coefficient per letter string, e.g. {'ZXXI': Fraction(-1, 16)}."""
        return {w.letters(): c * w.sign for c, w in self.terms}

    def to_matrix(self) -> np.ndarray:
        if self.n > DENSE_QUBIT_CAP:
            raise CapacityError(
                f"dense operators are capped at {DENSE_QUBIT_CAP} qubits, got n={self.n}"
            )
        out = np.zeros((1 << self.n, 1 << self.n), dtype=complex)
        for coeff, word in self.terms:
            out += float(coeff) * pauli_to_matrix(word)
        return out

    def expectation(self, state: StateVector | DensityMatrix) -> float:
        return math.fsum(
            float(coeff) * pauli_expectation(word, state) for coeff, word in self.terms
        )

    def __repr__(self) -> str:
        return f"SignedPauliSum(n={self.n}, terms={len(self.terms)})"


def graph_bell_operator(g: Graph) -> SignedPauliSum:
    """(1/2^n) times the sum of all stabilizer elements of the graph."""
    if g.n > BELL_OPERATOR_QUBIT_CAP:
        raise CapacityError(
            f"graph Bell operators are capped at {BELL_OPERATOR_QUBIT_CAP} qubits"
        )
    unit = Fraction(1, 1 << g.n)
    return SignedPauliSum(g.n, ((unit, e.word) for e in stabilizer_group(g)))


def bell_operator_from_words(n: int, words) -> SignedPauliSum:
    """Uniform 2^-n sum over an explicit list of 2^n signed words."""
    words = list(words)
    if len(words) != 1 << n:
        raise ValidationError(f"expected {1 << n} words, got {len(words)}")
    unit = Fraction(1, 1 << n)
    return SignedPauliSum(n, ((unit, w) for w in words))


@dataclass(frozen=True)
class MeasurementSettings:
    """Two unit measurement directions per qubit (3-vectors a_k and a'_k)."""

    vectors: tuple  # ((a, a_prime), ...) with a = (ax, ay, az)

    def __post_init__(self):
        cleaned = []
        for pair in self.vectors:
            a, ap = pair
            a = tuple(float(c) for c in a)
            ap = tuple(float(c) for c in ap)
            for v in (a, ap):
                if len(v) != 3:
                    raise ValidationError(f"setting vector {v} is not three dimensional")
                if abs(math.sqrt(sum(c * c for c in v)) - 1.0) > 1e-12:
                    raise ValidationError(f"setting vector {v} is not unit length")
            cleaned.append((a, ap))
        if not cleaned:
            raise ValidationError("settings need at least one qubit")
        object.__setattr__(self, "vectors", tuple(cleaned))

    @property
    def n(self) -> int:
        return len(self.vectors)

    @classmethod
    def xy(cls, n: int) -> "MeasurementSettings":
        return cls(tuple(((1.0, 0.0, 0.0), (0.0, 1.0, 0.0)) for _ in range(n)))

    @classmethod
    def rotated_xy(cls, n: int, angle: float) -> "MeasurementSettings":
        """x/y settings rotated about z by ``angle`` on every qubit."""
        a = (math.cos(angle), math.sin(angle), 0.0)
        ap = (-math.sin(angle), math.cos(angle), 0.0)
        return cls(tuple((a, ap) for _ in range(n)))

    def as_axes(self) -> list | None:
        """Per-qubit ((letter, sign), (letter, sign)) if all vectors are signed
        Pauli axes, else None."""
        axes = []
        for a, ap in self.vectors:
            pair = []
            for v in (a, ap):
                match = None
                for axis, tag in _AXES.items():
                    if all(abs(v[i] - axis[i]) <= _AXIS_ATOL for i in range(3)):
                        match = tag
                        break
                if match is None:
                    return None
                pair.append(match)
            axes.append(tuple(pair))
        return axes


def _mk_symbolic(axes) -> tuple[dict, int]:
    """Scaled-integer MK recursion over signed Pauli-axis settings.

    Returns (terms, half_power): term coefficients are ints to be scaled
    by 2^(-half_power/2), with half_power = 3*(n-1).
    """
    n = len(axes)
    (la, sa), (lb, sb) = axes[0]
    cur = {}
    cur_p = {}

    def add(d, key, c):
        d[key] = d.get(key, 0) + c

    # keys are tuples of per-qubit (x, z) bit pairs
    add(cur, (_LETTER_BITS[la],), sa)
    add(cur_p, (_LETTER_BITS[lb],), sb)
    for k in range(1, n):
        (la, sa), (lb, sb) = axes[k]
        ba, bb = _LETTER_BITS[la], _LETTER_BITS[lb]
        nxt = {}
        nxt_p = {}
        for word, c in cur.items():
            add(nxt, word + (ba,), c * sa)
            add(nxt, word + (bb,), c * sb)
            add(nxt_p, word + (bb,), c * sb)
            add(nxt_p, word + (ba,), -c * sa)
        for word, c in cur_p.items():
            add(nxt, word + (ba,), c * sa)
            add(nxt, word + (bb,), -c * sb)
            add(nxt_p, word + (bb,), c * sb)
            add(nxt_p, word + (ba,), c * sa)
        cur = {k2: v for k2, v in nxt.items() if v}
        cur_p = {k2: v for k2, v in nxt_p.items() if v}
    return cur, 3 * (n - 1)


def _scaled_coeff(c: int, half_power: int) -> Fraction | float:
    if half_power % 2 == 0:
        return Fraction(c, 1 << (half_power // 2))
    return c * 2.0 ** (-(half_power - 1) / 2 - 0.5)


def _bits_to_word(n: int, bit_pairs) -> PauliString:
    x = z = 0
    for j, (xb, zb) in enumerate(bit_pairs):
        x |= xb << j
        z |= zb << j
    return PauliString(n, x, z, 0)


def _dir_matrix(v) -> np.ndarray:
    return v[0] * _PAULI_DENSE["X"] + v[1] * _PAULI_DENSE["Y"] + v[2] * _PAULI_DENSE["Z"]


def mk_recursive(settings: MeasurementSettings) -> SignedPauliSum | np.ndarray:
    """Mermin-Klyshko operator from the two-settings recursion.

    B_1 is the first qubit's primary direction; each further qubit k
    contributes (sigma_a + sigma_a')/(2 sqrt 2) against B_{k-1} and
    (sigma_a - sigma_a')/(2 sqrt 2) against the primed operator obtained
    by swapping every a_k with a'_k. Returns an exact SignedPauliSum for
    signed-axis settings, otherwise a dense matrix (capped at
    MK_DENSE_QUBIT_CAP qubits).
    """
    axes = settings.as_axes()
    n = settings.n
    if axes is not None:
        terms, half_power = _mk_symbolic(axes)
        return SignedPauliSum(
            n,
            (
                (abs(_scaled_coeff(c, half_power)), _bits_to_word(n, bits) if c > 0
                 else _bits_to_word(n, bits).negate())
                for bits, c in terms.items()
            ),
        )
    if n > MK_DENSE_QUBIT_CAP:
        raise CapacityError(
            f"dense MK recursion is capped at {MK_DENSE_QUBIT_CAP} qubits, got n={n}"
        )
    a0, ap0 = settings.vectors[0]
    cur = _dir_matrix(a0)
    cur_p = _dir_matrix(ap0)
    scale = 1.0 / (2.0 * math.sqrt(2.0))
    for k in range(1, n):
        a, ap = settings.vectors[k]
        ma, mp = _dir_matrix(a), _dir_matrix(ap)
        nxt = scale * (np.kron(cur, ma + mp) + np.kron(cur_p, ma - mp))
        nxt_p = scale * (np.kron(cur_p, mp + ma) + np.kron(cur, mp - ma))
        cur, cur_p = nxt, nxt_p
    return cur


@dataclass(frozen=True)
class MkClosedForm:
    """The two-entry MK operator: e^{i beta}|1..1><0..0| + h.c."""

    n: int
    beta: float

    @classmethod
    def standard(cls, n: int) -> "MkClosedForm":
        if n < 1:
            raise ValidationError(f"need n >= 1, got {n}")
        return cls(n, (n - 1) * math.pi / 4.0)

    def to_matrix(self) -> np.ndarray:
        if self.n > DENSE_QUBIT_CAP:
            raise CapacityError(
                f"dense operators are capped at {DENSE_QUBIT_CAP} qubits, got n={self.n}"
            )
        dim = 1 << self.n
        m = np.zeros((dim, dim), dtype=complex)
        m[dim - 1, 0] = np.exp(1j * self.beta)
        m[0, dim - 1] = np.exp(-1j * self.beta)
        return m

    def expectation(self, state: StateVector | DensityMatrix) -> float:
        if state.n != self.n:
            raise DimensionError(f"qubit counts differ: {self.n} vs {state.n}")
        if isinstance(state, StateVector):
            amp0 = state.amplitudes[0]
            amp1 = state.amplitudes[-1]
            rho01 = amp0 * np.conj(amp1)
        else:
            rho01 = state.entries[0, -1]
        return float(2.0 * np.real(np.exp(1j * self.beta) * rho01))


def mk_closed_form(n: int) -> MkClosedForm:
    """The x/y-settings MK operator in sparse closed form."""
    return MkClosedForm.standard(n)


def mk_pauli_expansion(n: int, beta_quarters: int | None = None) -> SignedPauliSum:
    """Pauli expansion of the closed form with beta = beta_quarters * pi/4.

    Defaults to the standard phase (n-1)*pi/4. The coefficient of a word
    with k Y letters (X elsewhere) is 2^(1-n) cos(beta - k pi/2); for even
    beta_quarters every coefficient is exactly rational.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if beta_quarters is None:
        beta_quarters = n - 1
    terms = []
    scale_num = {0: 1, 1: None, 2: 0, 3: None, 4: -1, 5: None, 6: 0, 7: None}
    for word_bits in range(1 << n):
        k = bin(word_bits).count("1")
        m = (beta_quarters - 2 * k) % 8
        num = scale_num[m]
        if num is None:
            # odd eighth-turn: magnitude 2^(1-n)/sqrt(2)
            sign = 1 if m in (1, 7) else -1
            coeff = sign * 2.0 ** (1 - n) / math.sqrt(2.0)
        elif num == 0:
            continue
        else:
            coeff = Fraction(num, 1 << (n - 1))
        x = (1 << n) - 1
        z = word_bits  # bit j set -> Y on qubit j
        word = PauliString(n, x, z, 0)
        terms.append((abs(coeff), word if coeff > 0 else word.negate()))
    return SignedPauliSum(n, terms)


def operator_expectation(op, state: StateVector | DensityMatrix) -> float:
    """Expectation of a SignedPauliSum, MkClosedForm, or dense matrix."""
    if isinstance(op, SignedPauliSum):
        return op.expectation(state)
    if isinstance(op, MkClosedForm):
        return op.expectation(state)
    if isinstance(op, np.ndarray):
        if isinstance(state, StateVector):
            if op.shape[0] != state.amplitudes.size:
                raise DimensionError("operator and state dimensions differ")
            value = complex(np.vdot(state.amplitudes, op @ state.amplitudes))
        else:
            if op.shape != state.entries.shape:
                raise DimensionError("operator and state dimensions differ")
            value = complex(np.trace(op @ state.entries))
        return float(value.real)
    raise ValidationError(f"unsupported operator type {type(op).__name__}")
