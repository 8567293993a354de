"""Word algebra, parsing, matrices, and expectation values."""

import math

import numpy as np
import pytest

from graphbell import (
    ContractError,
    DensityMatrix,
    DimensionError,
    PauliParseError,
    PauliString,
    StateVector,
    ValidationError,
    format_pauli,
    parse_pauli,
    pauli_commutes,
    pauli_expectation,
    pauli_multiply,
    pauli_to_matrix,
)
from graphbell.errors import CapacityError

from conftest import kron_word, random_density, random_state


def pstr(text, n=None):
    return parse_pauli(text, n if n is not None else len(text.replace("-", "").replace("+", "").strip()))


def random_word(n, rng, hermitian=True):
    letters = "".join(rng.choice(list("IXYZ")) for _ in range(n))
    sign = int(rng.choice([1, -1])) if hermitian else 1
    return PauliString.from_letters(letters, sign)


class TestMultiply:
    def test_single_qubit_xz(self):
        p = pauli_multiply(pstr("X"), pstr("Z"))
        assert p.letters() == "Y"
        assert p.phase == -1j

    def test_two_qubit_example_vs_matrix_oracle(self):
        p = pauli_multiply(pstr("XZ"), pstr("ZX"))
        assert format_pauli(p) == "+YY"
        oracle = kron_word("XZ") @ kron_word("ZX")
        assert np.allclose(oracle, kron_word("YY"))

    @pytest.mark.parametrize("word", ["X", "Y", "Z", "XYZI", "-ZZXY"])
    def test_hermitian_square_is_identity(self, word):
        p = pstr(word, len(word.lstrip("+-")))
        sq = pauli_multiply(p, p)
        assert sq == PauliString.identity(p.n)

    def test_matrix_homomorphism_random(self, rng):
        for _ in range(60):
            n = int(rng.integers(1, 6))
            p, q = random_word(n, rng), random_word(n, rng)
            lhs = pauli_to_matrix(pauli_multiply(p, q))
            rhs = pauli_to_matrix(p) @ pauli_to_matrix(q)
            assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_associativity_random(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 5))
            p, q, r = (random_word(n, rng) for _ in range(3))
            assert pauli_multiply(pauli_multiply(p, q), r) == pauli_multiply(
                p, pauli_multiply(q, r)
            )

    def test_phase_group_closure(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 6))
            prod = pauli_multiply(random_word(n, rng), random_word(n, rng))
            assert prod.phase in (1, -1, 1j, -1j)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            pauli_multiply(pstr("X"), pstr("XX"))


class TestCommutes:
    def test_x_vs_z(self):
        assert not pauli_commutes(pstr("X"), pstr("Z"))

    def test_xz_vs_zx(self):
        assert pauli_commutes(pstr("XZ"), pstr("ZX"))

    def test_identity_commutes_with_anything(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 6))
            assert pauli_commutes(random_word(n, rng), PauliString.identity(n))

    def test_against_matrix_commutator(self, rng):
        for _ in range(60):
            n = int(rng.integers(1, 6))
            p, q = random_word(n, rng), random_word(n, rng)
            mp, mq = pauli_to_matrix(p), pauli_to_matrix(q)
            comm_norm = np.max(np.abs(mp @ mq - mq @ mp))
            assert pauli_commutes(p, q) == (comm_norm < 1e-12)


class TestMatrix:
    def test_y(self):
        assert np.allclose(pauli_to_matrix(pstr("Y")), [[0, -1j], [1j, 0]])

    def test_identity_three_qubits(self):
        assert np.allclose(pauli_to_matrix(PauliString.identity(3)), np.eye(8))

    def test_negative_word_squares_to_identity_tracelessly(self):
        p = parse_pauli("-ZYXY", 4)
        m = pauli_to_matrix(p)
        assert np.allclose(m @ m, np.eye(16))
        assert abs(np.trace(m)) < 1e-12
        assert np.max(np.abs(m - kron_word("ZYXY", -1))) < 1e-12

    def test_qubit_zero_is_leftmost_factor(self):
        m = pauli_to_matrix(parse_pauli("XI", 2))
        assert np.allclose(m, np.kron(kron_word("X"), np.eye(2)))

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            pauli_to_matrix(PauliString.identity(11))


class TestParseFormat:
    def test_spaced_negative_row(self):
        p = parse_pauli("- Z X X I", 4)
        assert p.letters() == "ZXXI"
        assert p.sign == -1

    def test_identity_default_sign(self):
        p = parse_pauli("IIII", 4)
        assert p == PauliString.identity(4)

    def test_bad_letter_position(self):
        with pytest.raises(PauliParseError) as err:
            parse_pauli("XZQI", 4)
        assert err.value.position == 2
        assert "position 2" in str(err.value)

    def test_wrong_length(self):
        with pytest.raises(PauliParseError):
            parse_pauli("XZ", 4)

    def test_round_trip_canonicalizes(self):
        assert format_pauli(parse_pauli("  + X  Y z ".upper(), 3)) == "+XYZ"
        assert format_pauli(parse_pauli("-IXI", 3)) == "-IXI"

    def test_round_trip_random(self, rng):
        for _ in range(30):
            n = int(rng.integers(1, 8))
            p = random_word(n, rng)
            assert parse_pauli(format_pauli(p), n) == p


class TestStates:
    def test_state_norm_validation(self):
        with pytest.raises(ValidationError):
            StateVector(1, [1.0, 1.0])

    def test_density_validation(self):
        with pytest.raises(ValidationError):
            DensityMatrix(1, [[0.6, 0], [0, 0.6]])
        with pytest.raises(ValidationError):
            DensityMatrix(1, [[1.5, 0], [0, -0.5]])

    def test_dimension_checks(self):
        with pytest.raises(DimensionError):
            StateVector(2, [1, 0])


class TestExpectation:
    def test_plus_state_x(self):
        plus = StateVector(1, [1 / math.sqrt(2)] * 2)
        assert pauli_expectation(pstr("X"), plus) == pytest.approx(1.0, abs=1e-12)

    def test_ghz4_xxxx(self):
        amps = np.zeros(16)
        amps[0] = amps[-1] = 1 / math.sqrt(2)
        ghz = StateVector(4, amps)
        assert pauli_expectation(parse_pauli("XXXX", 4), ghz) == pytest.approx(1.0)

    def test_ghz3_zz_correlations(self):
        amps = np.zeros(8)
        amps[0] = amps[-1] = 1 / math.sqrt(2)
        ghz = StateVector(3, amps)
        assert pauli_expectation(parse_pauli("ZZI", 3), ghz) == pytest.approx(1.0)
        assert pauli_expectation(parse_pauli("ZII", 3), ghz) == pytest.approx(0.0, abs=1e-12)

    def test_statevector_path_matches_dense_oracle(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 6))
            p = random_word(n, rng)
            v = random_state(n, rng)
            state = StateVector(n, v)
            oracle = np.real(v.conj() @ kron_word(p.letters(), p.sign) @ v)
            assert pauli_expectation(p, state) == pytest.approx(oracle, abs=1e-10)

    def test_density_path_matches_dense_oracle(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 5))
            p = random_word(n, rng)
            rho = random_density(n, rng)
            oracle = np.real(np.trace(kron_word(p.letters(), p.sign) @ rho))
            got = pauli_expectation(p, DensityMatrix(n, rho))
            assert got == pytest.approx(oracle, abs=1e-10)

    def test_non_hermitian_rejected(self):
        p = pauli_multiply(pstr("X"), pstr("Z"))  # -iY
        plus = StateVector(1, [1 / math.sqrt(2)] * 2)
        with pytest.raises(ContractError):
            pauli_expectation(p, plus)

    def test_dimension_mismatch(self):
        plus = StateVector(1, [1 / math.sqrt(2)] * 2)
        with pytest.raises(DimensionError):
            pauli_expectation(pstr("XX"), plus)
