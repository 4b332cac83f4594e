import numpy as np
import pytest

from tensorpreservers.hermitian import random_hermitian


def brute_partial_transpose(X, dims, slot):
    """Entrywise partial transpose by explicit multi-index loops."""
    N = int(np.prod(dims))
    out = np.zeros((N, N), dtype=complex)
    for r in range(N):
        ri = list(np.unravel_index(r, dims))
        for c in range(N):
            ci = list(np.unravel_index(c, dims))
            ri2, ci2 = ri.copy(), ci.copy()
            ri2[slot - 1], ci2[slot - 1] = ci[slot - 1], ri[slot - 1]
            out[r, c] = X[np.ravel_multi_index(ri2, dims), np.ravel_multi_index(ci2, dims)]
    return out


@pytest.fixture
def C0():
    """Ones at (1,1), (1,4), (4,1), (4,4): equal to w w* with w = (1, 0, 0, 1)."""
    C = np.zeros((4, 4), dtype=complex)
    for i, j in [(0, 0), (0, 3), (3, 0), (3, 3)]:
        C[i, j] = 1
    return C


@pytest.fixture
def SWAP():
    S = np.zeros((4, 4), dtype=complex)
    for i, j in [(0, 0), (1, 2), (2, 1), (3, 3)]:
        S[i, j] = 1
    return S


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def rand_herm(n, seed):
    return random_hermitian(n, np.random.default_rng(seed))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
