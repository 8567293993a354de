"""Depolarizing noise, GHZ states with a phase, and projection-noise sampling.

The single-qubit channel keeps the state with probability p and otherwise
twirls it over all four Paulis (the identity term included), which
suppresses every non-identity Pauli component by exactly p. Applied to
all n qubits of a GHZ state this multiplies the extreme off-diagonal
element by p^n, giving the closed forms for the noisy MK value and the
relative violation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import mk_closed_form
from .errors import CapacityError, NumericalError, ValidationError
from .pauli import DensityMatrix, PauliString, StateVector, VECTOR_QUBIT_CAP, pauli_to_matrix

CHANNEL_QUBIT_CAP = 8
NOISY_MK_VERIFY_CAP = 6


@dataclass(frozen=True)
class NoiseSpec:
    """Per-qubit retention probability of the depolarizing channel."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValidationError(f"retention probability must be in [0, 1], got {self.p}")


@dataclass(frozen=True)
class ShotEstimate:
    """A finite-shot estimate of a +-1 observable's expectation value."""

    value: float
    stderr: float
    shots: int

    def __post_init__(self):
        if abs(self.value) > 1.0 + 1e-12:
            raise ValidationError(f"estimate {self.value} outside [-1, 1]")
        if self.stderr < 0 or self.stderr > 1:
            raise ValidationError(f"stderr {self.stderr} outside [0, 1]")


def depolarize_qubit(rho: DensityMatrix, qubit: int, spec: NoiseSpec) -> DensityMatrix:
    """Apply p*rho + (1-p)/4 * sum_k sigma_k rho sigma_k on one qubit."""
    if rho.n > CHANNEL_QUBIT_CAP:
        raise CapacityError(
            f"dense channel application is capped at {CHANNEL_QUBIT_CAP} qubits"
        )
    if not 0 <= qubit < rho.n:
        raise ValidationError(f"qubit {qubit} out of range for n={rho.n}")
    p = spec.p
    if p == 1.0:
        return rho
    twirl = np.zeros_like(rho.entries)
    for letter in "IXYZ":
        m = pauli_to_matrix(PauliString.single(rho.n, qubit, letter))
        twirl += m @ rho.entries @ m
    return DensityMatrix(rho.n, p * rho.entries + (1.0 - p) / 4.0 * twirl)


def depolarize_all(rho: DensityMatrix, spec: NoiseSpec) -> DensityMatrix:
    for qubit in range(rho.n):
        rho = depolarize_qubit(rho, qubit, spec)
    return rho


def ghz_state(n: int, beta: float = 0.0) -> StateVector:
    """(|0...0> + e^{i beta} |1...1>)/sqrt(2)."""
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    if n > VECTOR_QUBIT_CAP:
        raise CapacityError(f"state vectors are capped at {VECTOR_QUBIT_CAP} qubits")
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0 / math.sqrt(2.0)
    amps[-1] = np.exp(1j * beta) / math.sqrt(2.0)
    return StateVector(n, amps)


def noisy_ghz_mk(n: int, spec: NoiseSpec, verify: bool | None = None) -> tuple[float, float]:
    """(MK value, relative violation) for an all-qubit depolarized GHZ state.

    The closed forms are p^n and (sqrt(2) p)^n / sqrt(2). For small n the
    value is re-derived by dense channel simulation and must agree to
    1e-10 (set ``verify=False`` to skip).
    """
    if n < 1:
        raise ValidationError(f"need n >= 1, got {n}")
    p = spec.p
    value = p**n
    relative = (math.sqrt(2.0) * p) ** n / math.sqrt(2.0)
    if verify is None:
        verify = n <= NOISY_MK_VERIFY_CAP
    if verify:
        if n > NOISY_MK_VERIFY_CAP:
            raise CapacityError(
                f"dense verification is capped at {NOISY_MK_VERIFY_CAP} qubits"
            )
        op = mk_closed_form(n)
        rho = depolarize_all(ghz_state(n, op.beta).density_matrix(), spec)
        simulated = op.expectation(rho)
        if abs(simulated - value) > 1e-10:
            raise NumericalError(
                f"dense simulation {simulated} disagrees with closed form {value}"
            )
    return value, relative


def mk_violation_threshold() -> float:
    """Retention above which the noisy relative violation grows with n."""
    return 1.0 / math.sqrt(2.0)


def sample_expectation(true_value: float, shots: int, seed) -> ShotEstimate:
    """Average of ``shots`` +-1 outcomes with P(+1) = (1 + e)/2, seeded.

    ``seed`` may be an integer or a numpy SeedSequence (see ``subseed``).
    The standard error is the plug-in estimate sqrt((1 - mean^2)/shots).
    """
    if abs(true_value) > 1.0:
        raise ValidationError(f"expectation {true_value} outside [-1, 1]")
    if shots < 2:
        raise ValidationError(f"need at least 2 shots, got {shots}")
    rng = np.random.default_rng(seed)
    plus = rng.random(shots) < (1.0 + true_value) / 2.0
    value = float(np.mean(np.where(plus, 1.0, -1.0)))
    stderr = math.sqrt(max(0.0, 1.0 - value * value) / shots)
    return ShotEstimate(value, stderr, shots)


def subseed(master_seed: int, index: int) -> np.random.SeedSequence:
    """Deterministic per-task seed derived from a master seed."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(index,))
