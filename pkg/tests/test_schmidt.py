import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorpreservers.schmidt import (
    block_partial_transpose,
    k_operator_norm,
    k_vector_norm,
    local_product_map,
    local_sandwich,
    maximize_bilinear,
    sampled_product_norm,
    schmidt_decompose,
    schmidt_rank,
    schmidt_rank_truncate,
    swap_operator,
    swapped_product_map,
)
from tensorpreservers.superop import haar_unitary

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)
shapes = st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)])
seeds = st.integers(0, 2**32 - 1)


def cvec(rng, size):
    return rng.standard_normal(size) + 1j * rng.standard_normal(size)


def unit(rng, size):
    z = cvec(rng, size)
    return z / np.linalg.norm(z)


def test_product_vector_has_rank_one(rng):
    u, v = unit(rng, 2), unit(rng, 3)
    dec = schmidt_decompose(np.kron(u, v), 2, 3)
    assert dec.rank == 1
    assert dec.coefficients[0] == pytest.approx(1, abs=1e-12)


def test_bell_coefficients():
    dec = schmidt_decompose(BELL, 2, 2)
    np.testing.assert_allclose(dec.coefficients, [1 / np.sqrt(2)] * 2, atol=1e-15)
    assert dec.rank == 2


def test_basis_vector():
    dec = schmidt_decompose(np.array([1.0, 0, 0, 0]), 2, 2)
    assert dec.rank == 1
    np.testing.assert_allclose(dec.coefficients[0], 1)


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        schmidt_decompose(np.zeros(4), 2, 2)


@settings(max_examples=60, deadline=None)
@given(shape=shapes, seed=seeds)
def test_decomposition_contracts(shape, seed):
    m, n = shape
    rng = np.random.default_rng(seed)
    w = cvec(rng, m * n)
    dec = schmidt_decompose(w, m, n)
    np.testing.assert_allclose(dec.reconstruct(), w, atol=1e-9)
    assert abs(np.sum(dec.coefficients ** 2) - np.linalg.norm(w) ** 2) <= 1e-9 * (1 + np.linalg.norm(w) ** 2)
    L, R = dec.left_vectors, dec.right_vectors
    np.testing.assert_allclose(L.conj().T @ L, np.eye(L.shape[1]), atol=1e-10)
    np.testing.assert_allclose(R.conj().T @ R, np.eye(R.shape[1]), atol=1e-10)
    assert np.all(np.diff(dec.coefficients) <= 0)


def test_k_vector_norm_examples(rng):
    assert k_vector_norm(BELL, 2, 2, 1) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    w = unit(rng, 6)
    assert k_vector_norm(w, 2, 3, 2) == pytest.approx(1, abs=1e-12)
    uv = np.kron(unit(rng, 3), unit(rng, 3))
    for k in (1, 2, 3):
        assert k_vector_norm(uv, 3, 3, k) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        k_vector_norm(w, 2, 3, 3)
    with pytest.raises(ValueError):
        k_vector_norm(w, 2, 3, 0)


def test_k_vector_norm_lower_bounded_by_rank_k_overlaps(rng):
    # the max characterization: every unit v of Schmidt rank <= k gives |v* w| <= ||w||_k
    m, n, k = 3, 3, 2
    w = cvec(rng, 9)
    norm = k_vector_norm(w, m, n, k)
    best = 0.0
    for _ in range(2000):
        v = schmidt_rank_truncate(cvec(rng, 9), m, n, k)
        best = max(best, abs(v.conj() @ w))
    assert best <= norm + 1e-12
    # the truncation of w itself attains it
    assert abs(schmidt_rank_truncate(w, m, n, k).conj() @ w) == pytest.approx(norm, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(shape=shapes, seed=seeds)
def test_k_norm_is_a_norm_and_monotone(shape, seed):
    m, n = shape
    rng = np.random.default_rng(seed)
    x, y = cvec(rng, m * n), cvec(rng, m * n)
    a = complex(*rng.standard_normal(2))
    prev = 0.0
    for k in range(1, min(m, n) + 1):
        nx = k_vector_norm(x, m, n, k)
        assert k_vector_norm(a * x, m, n, k) == pytest.approx(abs(a) * nx, rel=1e-9, abs=1e-12)
        assert k_vector_norm(x + y, m, n, k) <= nx + k_vector_norm(y, m, n, k) + 1e-9
        assert prev <= nx + 1e-12
        prev = nx
    assert prev == pytest.approx(np.linalg.norm(x), rel=1e-12)


def test_truncate_examples(rng):
    uv = np.kron(unit(rng, 2), unit(rng, 2))
    out = schmidt_rank_truncate(uv, 2, 2, 1)
    assert abs(abs(out.conj() @ uv) - 1) < 1e-12
    t = schmidt_rank_truncate(BELL, 2, 2, 1)
    assert schmidt_rank(t, 2, 2) == 1
    assert np.linalg.norm(t) == pytest.approx(1)
    assert abs(t.conj() @ BELL) == pytest.approx(1 / np.sqrt(2), abs=1e-12)
    w = unit(rng, 6)
    np.testing.assert_allclose(schmidt_rank_truncate(w, 2, 3, 2), w, atol=1e-12)


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3)])
def test_operator_norm_at_full_rank(m, n, rng):
    C = cvec(rng, (m * n, m * n))
    assert k_operator_norm(C, m, n, min(m, n)) == pytest.approx(np.linalg.norm(C, 2), abs=1e-6)


def test_c0_product_norm(C0):
    oracle = sampled_product_norm(C0, 2, 2, samples=200_000, seed=3)
    est = k_operator_norm(C0, 2, 2, 1)
    assert est == pytest.approx(1, abs=1e-3)
    assert est >= oracle - 1e-6
    assert oracle <= 1 + 1e-12


def test_identity_product_norm():
    assert k_operator_norm(np.eye(4), 2, 2, 1) == pytest.approx(1, abs=1e-9)


def test_alternation_is_monotone_and_feasible(rng):
    C = cvec(rng, (9, 9))
    est = maximize_bilinear(C, 3, 3, 1, restarts=4)
    assert np.all(np.diff(est.history) >= -1e-12)
    assert schmidt_rank(est.u, 3, 3) == 1 and schmidt_rank(est.v, 3, 3) == 1
    assert abs(est.u.conj() @ C @ est.v) == pytest.approx(est.value)


def test_operator_norm_is_deterministic(rng):
    C = cvec(rng, (6, 6))
    assert k_operator_norm(C, 2, 3, 1, seed=5) == k_operator_norm(C, 2, 3, 1, seed=5)


def test_operator_norm_errors():
    with pytest.raises(ValueError):
        k_operator_norm(np.eye(4), 2, 2, 3)
    with pytest.raises(ValueError):
        k_operator_norm(np.ones((4, 3)), 2, 2, 1)


def test_swap_operator(rng):
    u, v = cvec(rng, 2), cvec(rng, 3)
    np.testing.assert_allclose(swap_operator(2, 3) @ np.kron(u, v), np.kron(v, u))


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3)])
def test_local_maps_preserve_vector_k_norm(m, n, rng):
    P, Q = haar_unitary(m, rng), haar_unitary(n, rng)
    maps = [local_product_map(P, Q)]
    if m == n:
        maps.append(swapped_product_map(P, Q))
        u, v = cvec(rng, m), cvec(rng, n)
        np.testing.assert_allclose(maps[1] @ np.kron(u, v), np.kron(Q @ v, P @ u))
    for _ in range(20):
        w = cvec(rng, m * n)
        for L in maps:
            for k in range(1, min(m, n) + 1):
                assert k_vector_norm(L @ w, m, n, k) == pytest.approx(k_vector_norm(w, m, n, k), abs=1e-9)


def test_matrix_maps_preserve_product_norm(rng):
    for _ in range(3):
        C = cvec(rng, (4, 4))
        base = k_operator_norm(C, 2, 2, 1)
        P1, Q1, P2, Q2 = (haar_unitary(2, rng) for _ in range(4))
        for X in (C.T, local_sandwich(C, P1, Q1, P2, Q2), block_partial_transpose(C, 2, 2)):
            assert k_operator_norm(X, 2, 2, 1) == pytest.approx(base, abs=1e-3)
