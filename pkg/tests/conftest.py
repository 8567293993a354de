import numpy as np
import pytest

I2 = np.eye(2, dtype=complex)
X2 = np.array([[0, 1], [1, 0]], dtype=complex)
Y2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z2 = np.array([[1, 0], [0, -1]], dtype=complex)

LETTER_MATRICES = {"I": I2, "X": X2, "Y": Y2, "Z": Z2}


def kron_word(letters: str, sign: int = 1) -> np.ndarray:
    """Independent dense oracle: literal tensor product of letter matrices."""
    m = np.array([[complex(sign)]])
    for ch in letters:
        m = np.kron(m, LETTER_MATRICES[ch])
    return m


def random_state(n: int, rng) -> np.ndarray:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return v / np.linalg.norm(v)


def random_density(n: int, rng) -> np.ndarray:
    dim = 1 << n
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def states_match_up_to_phase(a: np.ndarray, b: np.ndarray, atol=1e-10) -> bool:
    return abs(abs(np.vdot(a, b)) - 1.0) < atol


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
