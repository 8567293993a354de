"""Exact local-hidden-variable maxima for Pauli-sum Bell operators.

A deterministic LHV model fixes a value +1 or -1 for each of X, Y, Z on
each qubit; the model's value on an operator is the coefficient-weighted
sum of term signs. lhv_max finds the exact maximum of the absolute value
over all models by exhaustive evaluation.

The engine only enumerates variables that actually occur in the operator
(per qubit, per letter) and evaluates every assignment at once with an
integer Walsh-Hadamard transform over the free-variable hypercube: the
value array is the transform of the coefficient vector indexed by each
term's variable mask. All arithmetic is in integer units of the
coefficients' common denominator, so results are exact dyadic rationals
and ties break reproducibly (lexicographically least witness, qubit-major,
X < Y < Z, +1 before -1).

The GHZ-family bound uses the odd/even reduction: with Z pinned to +1 the
even-size stabilizer subsets contribute exactly 1/2, and the odd part
depends only on the number m of qubits whose X value is -1, leaving an
(n+1)-point maximisation in exact rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, DimensionError, NumericalError, ValidationError
from .bell import SignedPauliSum

FREE_VARIABLE_CAP = 24
MK_BRUTE_QUBIT_CAP = 12
GHZ_BOUND_MAX_N = 64

_LETTER_ORDER = "XYZ"


@dataclass(frozen=True)
class LhvAssignment:
    """Per-qubit deterministic +-1 values for the X, Y and Z observables."""

    values: tuple  # ((vx, vy, vz), ...) per qubit

    def __post_init__(self):
        vals = tuple(tuple(int(v) for v in triple) for triple in self.values)
        for triple in vals:
            if len(triple) != 3 or any(v not in (1, -1) for v in triple):
                raise ValidationError(f"assignment triple {triple} must be three +-1 values")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def all_plus(cls, n: int) -> "LhvAssignment":
        return cls(tuple((1, 1, 1) for _ in range(n)))

    def value(self, qubit: int, letter: str) -> int:
        return self.values[qubit][_LETTER_ORDER.index(letter)]


@dataclass(frozen=True)
class MkSettingsAssignment:
    """+-1 values assigned to each qubit's two measurement directions."""

    primary: tuple
    alternate: tuple


@dataclass(frozen=True)
class LhvBound:
    """A bound on the LHV value: exact, analytic, or an upper bound."""

    value: float
    kind: str  # "exact" | "upper_bound" | "analytic"
    witness: object | None = None
    method: str = ""
    exact: Fraction | None = None

    def as_fraction_str(self) -> str:
        return str(self.exact) if self.exact is not None else f"{self.value:.12g}"


def lhv_value(op: SignedPauliSum, assignment: LhvAssignment):
    """Deterministic model value: sum of coeff * sign * product of assigned values."""
    if assignment.n != op.n:
        raise DimensionError(f"assignment has {assignment.n} qubits, operator {op.n}")
    total = 0
    for coeff, word in op.terms:
        prod = word.sign
        for q in range(op.n):
            letter = word.letter(q)
            if letter != "I":
                prod *= assignment.value(q, letter)
        total += coeff * prod
    return total


def _free_variables(op: SignedPauliSum, restrict_z_to_plus: bool):
    """Qubit-major (qubit, letter) variables that occur in the operator."""
    present = [set() for _ in range(op.n)]
    for _, word in op.terms:
        for q in range(op.n):
            letter = word.letter(q)
            if letter != "I":
                present[q].add(letter)
    variables = []
    restricted = 0
    for q in range(op.n):
        for letter in _LETTER_ORDER:
            if letter in present[q]:
                if restrict_z_to_plus and letter == "Z":
                    restricted += 1
                else:
                    variables.append((q, letter))
    return variables, restricted


def _term_units(op: SignedPauliSum):
    """Integer (or float) coefficient units and the common denominator."""
    coeffs = [c * w.sign for c, w in op.terms]
    if all(isinstance(c, Fraction) for c in coeffs):
        denom = 1
        for c in coeffs:
            denom = denom * c.denominator // math.gcd(denom, c.denominator)
        return [int(c * denom) for c in coeffs], denom
    return [float(c) for c in coeffs], None


def _fwht_inplace(a: np.ndarray):
    h = 1
    while h < a.size:
        view = a.reshape(-1, 2 * h)
        x = view[:, :h].copy()
        y = view[:, h:]
        view[:, :h] = x + y
        view[:, h:] = x - y
        h *= 2


def _bit_reverse(values: np.ndarray, bits: int) -> np.ndarray:
    out = np.zeros_like(values)
    for i in range(bits):
        out |= ((values >> i) & 1) << (bits - 1 - i)
    return out


def lhv_max(op: SignedPauliSum, restrict_z_to_plus: bool = False) -> LhvBound:
    """Exact maximum of |model value| over all deterministic assignments.

    With ``restrict_z_to_plus`` every Z variable is pinned to +1 and only
    X/Y variables are searched (the GHZ-style reduction). Raises
    CapacityError when more than FREE_VARIABLE_CAP variables are free.
    """
    variables, restricted = _free_variables(op, restrict_z_to_plus)
    nvars = len(variables)
    if nvars > FREE_VARIABLE_CAP:
        msg = f"search space has {nvars} free binary variables (cap {FREE_VARIABLE_CAP})"
        if not restrict_z_to_plus:
            z_count = sum(1 for _, letter in variables if letter == "Z")
            if z_count and nvars - z_count <= FREE_VARIABLE_CAP:
                msg += (
                    f"; restricting Z assignments to +1 leaves {nvars - z_count}"
                    " free variables"
                )
        raise CapacityError(msg)
    var_bit = {v: i for i, v in enumerate(variables)}

    units, denom = _term_units(op)
    dtype = np.int64 if denom is not None else np.float64
    values = np.zeros(1 << nvars, dtype=dtype)
    for (coeff, word), unit in zip(op.terms, units):
        mask = 0
        for q in range(op.n):
            letter = word.letter(q)
            if letter != "I" and (q, letter) in var_bit:
                mask |= 1 << var_bit[(q, letter)]
        values[mask] += unit
    _fwht_inplace(values)

    # scan in chunks: global max of |values|, then lexicographically least witness
    chunk = 1 << min(nvars, 20)
    best = max(
        np.max(np.abs(values[start : start + chunk]))
        for start in range(0, values.size, chunk)
    )
    candidates = []
    for start in range(0, values.size, chunk):
        hits = np.flatnonzero(np.abs(values[start : start + chunk]) == best)
        if hits.size:
            idx = hits.astype(np.int64) + start
            keys = _bit_reverse(idx, nvars)
            at = int(np.argmin(keys))
            candidates.append((int(keys[at]), int(idx[at])))
    _, best_idx = min(candidates)

    triples = [[1, 1, 1] for _ in range(op.n)]
    for (q, letter), bit in var_bit.items():
        if (best_idx >> bit) & 1:
            triples[q][_LETTER_ORDER.index(letter)] = -1
    witness = LhvAssignment(tuple(tuple(t) for t in triples))

    method = "exhaustive-search" + ("+z-restricted" if restrict_z_to_plus else "")
    if denom is not None:
        exact = Fraction(int(best), denom)
        return LhvBound(float(exact), "exact", witness, method, exact)
    return LhvBound(float(best), "exact", witness, method, None)


def ghz_graph_bound(n: int) -> LhvBound:
    """Exact LHV bound for the complete-graph (GHZ-class) Bell operator.

    The even-subset part contributes exactly 1/2 (all Y values +1); the
    odd part depends only on the number m of qubits with X value -1:

        f(m) = 2^-n * sum over odd j of (-1)^((j-1)/2)
               * sum over t of (-1)^t C(m, t) C(n - m, j - t)

    and the bound is 1/2 + max_m |f(m)|, computed in exact rationals.
    """
    if not 2 <= n <= GHZ_BOUND_MAX_N:
        raise ValidationError(f"ghz_graph_bound supports 2 <= n <= {GHZ_BOUND_MAX_N}")
    best_num = None
    best_m = None
    for m in range(n + 1):
        total = 0
        for j in range(1, n + 1, 2):
            e_j = sum(
                (-1) ** t * math.comb(m, t) * math.comb(n - m, j - t)
                for t in range(max(0, j - (n - m)), min(j, m) + 1)
            )
            total += (-1) ** ((j - 1) // 2) * e_j
        if best_num is None or abs(total) > best_num:
            best_num = abs(total)
            best_m = m
    exact = Fraction(1, 2) + Fraction(best_num, 1 << n)
    triples = tuple(
        (-1 if q >= n - best_m else 1, 1, 1) for q in range(n)
    )
    witness = LhvAssignment(triples)
    return LhvBound(float(exact), "exact", witness, "ghz-odd-even-reduction", exact)


def mk_bound(n: int) -> LhvBound:
    """Analytic MK bound 2^-(n-1)/2 (exact Fraction when n is odd)."""
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    value = 2.0 ** (-(n - 1) / 2)
    exact = Fraction(1, 1 << ((n - 1) // 2)) if (n - 1) % 2 == 0 else None
    return LhvBound(value, "analytic", None, "mk-analytic", exact)


def _pm_bit_array(bit: int, total_bits: int) -> np.ndarray:
    """+-1 array over all 2^total_bits assignments for one variable bit
    (bit set means -1)."""
    period = 1 << bit
    block = np.concatenate(
        [np.ones(period, dtype=np.int8), -np.ones(period, dtype=np.int8)]
    )
    return np.tile(block, 1 << (total_bits - bit - 1))


def mk_bound_bruteforce(n: int) -> LhvBound:
    """Exhaustive LHV check of the MK recursion over all 2^(2n) assignments.

    Every +-1 assignment to the per-qubit direction pair is pushed through
    the recursion with values scaled by 2^((k-1)/2), which keeps the
    arithmetic in exact small integers. The maximum must equal the
    analytic bound; any mismatch raises.
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if n > MK_BRUTE_QUBIT_CAP:
        raise CapacityError(
            f"MK brute force is capped at {MK_BRUTE_QUBIT_CAP} qubits, got n={n}"
        )
    bits = 2 * n
    # bit 2k is qubit k's primary direction, bit 2k+1 its alternate
    b = _pm_bit_array(0, bits)
    bp = _pm_bit_array(1, bits)
    for k in range(1, n):
        alpha = _pm_bit_array(2 * k, bits)
        alpha_p = _pm_bit_array(2 * k + 1, bits)
        h_sum = (alpha + alpha_p) // 2
        h_diff = (alpha - alpha_p) // 2
        b, bp = b * h_sum + bp * h_diff, bp * h_sum - b * h_diff
    peak = int(np.max(np.abs(b.astype(np.int16))))
    if peak != 1 or int(np.min(np.abs(b.astype(np.int16)))) != 1:
        raise NumericalError("scaled MK recursion left the +-1 lattice")
    value = 2.0 ** (-(n - 1) / 2)
    exact = Fraction(1, 1 << ((n - 1) // 2)) if (n - 1) % 2 == 0 else None
    # every assignment attains the maximum modulus; all-plus is the least
    witness = MkSettingsAssignment(tuple([1] * n), tuple([1] * n))
    return LhvBound(value, "exact", witness, "mk-bruteforce", exact)


def product_bound(parts) -> LhvBound:
    """Upper bound for an edge-joined graph: the product of part bounds."""
    parts = list(parts)
    if not parts:
        raise ValidationError("product_bound needs at least one part")
    value = 1.0
    exact = Fraction(1)
    for part in parts:
        value *= part.value
        exact = exact * part.exact if (exact is not None and part.exact is not None) else None
    if len(parts) == 1:
        return parts[0]
    method = "product(" + ", ".join(p.method or p.kind for p in parts) + ")"
    return LhvBound(value, "upper_bound", None, method, exact)
