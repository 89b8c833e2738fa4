import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def brute_force_choi(operators, basis_matrix):
    """J/2 assembled block by block from Phi(|j><k|), output rotated by V^dag . V."""
    v = np.asarray(basis_matrix, dtype=complex)
    out = np.zeros((4, 4), dtype=complex)
    for j in range(2):
        for k in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[j, k] = 1.0
            image = sum(m @ unit @ m.conj().T for m in operators)
            out[2 * j:2 * j + 2, 2 * k:2 * k + 2] = v.conj().T @ image @ v
    return out / 2
