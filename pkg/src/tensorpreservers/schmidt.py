"""Schmidt decompositions and the Schmidt-rank-restricted norms.

A vector w in C^{mn} is viewed as the m x n matrix [w] (row-major fill).
Its singular values are the Schmidt coefficients, and

    ||w||_k   = sqrt(s_1^2 + ... + s_k^2)
    |||C|||_k = max |u* C v| over unit u, v of Schmidt rank <= k.

The vector norm has a closed form; the matrix norm is estimated from below
by alternating maximization with random restarts.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .tensor import DimProfile, partial_transpose, reshape_vector, unreshape

__all__ = [
    "RANK_TOL",
    "SchmidtDecomposition",
    "schmidt_decompose",
    "schmidt_rank",
    "schmidt_rank_truncate",
    "k_vector_norm",
    "NormEstimate",
    "maximize_bilinear",
    "k_operator_norm",
    "sampled_product_norm",
    "swap_operator",
    "local_product_map",
    "swapped_product_map",
    "local_sandwich",
    "block_partial_transpose",
]

RANK_TOL = 1e-10


@dataclass(frozen=True)
class SchmidtDecomposition:
    """w = sum_j coefficients[j] * kron(left[:, j], right[:, j])."""

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    rank: int

    def reconstruct(self):
        M = (self.left_vectors * self.coefficients) @ self.right_vectors.T
        return unreshape(M)


def _svd(w, m, n):
    W = reshape_vector(np.asarray(w, dtype=complex), m, n)
    if not np.any(W):
        raise ValueError("Schmidt decomposition of the zero vector is undefined")
    return np.linalg.svd(W, full_matrices=False)


def schmidt_decompose(w, m, n):
    U, s, Vh = _svd(w, m, n)
    rank = int(np.sum(s > RANK_TOL * s[0]))
    return SchmidtDecomposition(s, U, Vh.T, rank)


def schmidt_rank(w, m, n):
    return schmidt_decompose(w, m, n).rank


def _check_k(k, m, n):
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must lie in 1..{min(m, n)}, got {k}")


def schmidt_rank_truncate(w, m, n, k):
    """Closest unit vector of Schmidt rank <= k: keep the top-k triples.

    Ties between equal coefficients follow the SVD output order.
    """
    _check_k(k, m, n)
    U, s, Vh = _svd(w, m, n)
    M = (U[:, :k] * s[:k]) @ Vh[:k]
    return unreshape(M) / np.linalg.norm(s[:k])


def k_vector_norm(w, m, n, k):
    _check_k(k, m, n)
    s = np.linalg.svd(reshape_vector(np.asarray(w, dtype=complex), m, n), compute_uv=False)
    return float(np.sqrt(np.sum(s[:k] ** 2)))


class NormEstimate(NamedTuple):
    value: float
    u: np.ndarray
    v: np.ndarray
    history: list


def _random_unit(rng, size):
    z = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return z / np.linalg.norm(z)


def _alternate(C, m, n, k, u, iterations, tol):
    """One restart of alternating maximization starting from ``u``.

    With u fixed, the best feasible v is the rank-k truncation of C* u, and
    symmetrically for u; each half-step can only increase |u* C v|.
    """
    Ch = C.conj().T
    value = 0.0
    v = None
    history = []
    for _ in range(iterations):
        x = Ch @ u
        if not np.any(np.abs(x) > 0):
            break
        v = schmidt_rank_truncate(x, m, n, k)
        y = C @ v
        if not np.any(np.abs(y) > 0):
            break
        u = schmidt_rank_truncate(y, m, n, k)
        new = float(abs(u.conj() @ C @ v))
        history.append(new)
        if new - value < tol:
            value = max(value, new)
            break
        value = new
    if v is None:
        # C annihilates the start vector; any feasible v attains 0
        v = u
    return value, u, v, history


def maximize_bilinear(C, m, n, k, restarts=32, iterations=200, tol=1e-10, seed=0):
    """Best |u* C v| found over random restarts; returns a NormEstimate.

    Restart r is seeded from ``(seed, r)`` so the result does not depend on
    evaluation order. The returned value is attained by the returned unit
    vectors, both of Schmidt rank <= k, hence a certified lower bound.
    """
    C = np.asarray(C, dtype=complex)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"C must be square, got shape {C.shape}")
    if C.shape[0] != m * n:
        raise ValueError(f"C has size {C.shape[0]}, expected {m * n}")
    _check_k(k, m, n)

    best = None
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        u0 = schmidt_rank_truncate(_random_unit(rng, m * n), m, n, k)
        value, u, v, history = _alternate(C, m, n, k, u0, iterations, tol)
        if best is None or value > best.value:
            best = NormEstimate(value, u, v, history)
    return best


def k_operator_norm(C, m, n, k, restarts=32, iterations=200, tol=1e-10, seed=0):
    return maximize_bilinear(C, m, n, k, restarts, iterations, tol, seed).value


def sampled_product_norm(C, m, n, samples=1_000_000, seed=0, batch=100_000):
    """Brute-force lower bound on |||C|||_1 from random product-vector pairs."""
    C = np.asarray(C, dtype=complex)
    rng = np.random.default_rng(seed)
    best = 0.0
    remaining = samples
    while remaining > 0:
        b = min(batch, remaining)
        remaining -= b
        vecs = []
        for d in (m, n, m, n):
            z = rng.standard_normal((b, d)) + 1j * rng.standard_normal((b, d))
            vecs.append(z / np.linalg.norm(z, axis=1, keepdims=True))
        u = np.einsum("bi,bj->bij", vecs[0], vecs[1]).reshape(b, m * n)
        v = np.einsum("bi,bj->bij", vecs[2], vecs[3]).reshape(b, m * n)
        vals = np.abs(np.einsum("bi,ij,bj->b", u.conj(), C, v))
        best = max(best, float(vals.max()))
    return best


def swap_operator(m, n):
    """Permutation matrix sending u (x) v in C^m (x) C^n to v (x) u."""
    S = np.zeros((m * n, m * n))
    for i in range(m):
        for j in range(n):
            S[j * m + i, i * n + j] = 1
    return S


def local_product_map(P, Q):
    """Matrix of the linear map u (x) v -> Pu (x) Qv."""
    return np.kron(P, Q)


def swapped_product_map(P, Q):
    """Matrix of u (x) v -> Qv (x) Pu; needs P, Q of equal size."""
    P, Q = np.asarray(P), np.asarray(Q)
    if P.shape != Q.shape:
        raise ValueError("the swapped form needs factors of equal size")
    return swap_operator(P.shape[0], Q.shape[0]) @ np.kron(P, Q)


def local_sandwich(X, P1, Q1, P2, Q2):
    """X -> (P1 (x) Q1) X (P2 (x) Q2)."""
    return np.kron(P1, Q1) @ X @ np.kron(P2, Q2)


def block_partial_transpose(X, m, n):
    """Transpose each n x n block X_ij of an mn x mn matrix."""
    return partial_transpose(X, DimProfile((m, n)), 2)
