"""Hermitian matrices, eigensystems, spectra and spectral radii.

Matrices are plain complex ``numpy`` arrays. A spectrum is a 1-D real array
sorted in non-increasing order.
"""

import numpy as np

__all__ = [
    "HERM_TOL",
    "NotHermitianError",
    "SolverError",
    "as_hermitian",
    "random_hermitian",
    "eigensystem",
    "spectrum",
    "spectral_radius",
    "spectra_equal",
    "spectrum_deviation",
]

HERM_TOL = 1e-12


class NotHermitianError(ValueError):
    pass


class SolverError(RuntimeError):
    """Raised when the eigensolver fails to meet its residual contract."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual


def as_hermitian(A, tol=HERM_TOL):
    """Validate ``A`` as Hermitian and return the symmetrized copy (A + A*)/2.

    Raises NotHermitianError for non-square input, non-finite entries, or
    max-abs(A - A*) above ``tol``.
    """
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise NotHermitianError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotHermitianError("matrix has non-finite entries")
    skew = np.max(np.abs(A - A.conj().T))
    if skew > tol:
        raise NotHermitianError(f"max-abs(A - A*) = {skew:.3e} exceeds {tol:.1e}")
    return (A + A.conj().T) / 2


def random_hermitian(n, rng):
    """GUE-style random Hermitian matrix of size ``n``."""
    rng = np.random.default_rng(rng)
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (Z + Z.conj().T) / 2


def eigensystem(A):
    """Eigenvalues (descending) and aligned unitary eigenvector matrix.

    Returns ``(values, V)`` with ``A = V @ diag(values) @ V*``. Within a cluster
    of equal eigenvalues the column order follows the solver's output order.
    """
    A = as_hermitian(A)
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigensolver did not converge: {exc}") from exc
    # ties keep the solver's column order
    order = np.argsort(-w, kind="stable")
    w, V = w[order], V[:, order]

    residual = np.max(np.abs(A - (V * w) @ V.conj().T))
    if residual > 1e-9 * (1 + np.max(np.abs(A))):
        raise SolverError(f"reconstruction residual {residual:.3e} too large", residual)
    return w, V


def spectrum(A):
    """Eigenvalues of a Hermitian matrix sorted in non-increasing order."""
    A = as_hermitian(A)
    try:
        w = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigensolver did not converge: {exc}") from exc
    return w[::-1].copy()


def spectral_radius(A):
    return float(np.max(np.abs(spectrum(A))))


def spectrum_deviation(s1, s2):
    """Largest scaled gap max_i |s1_i - s2_i| / (1 + max(|s1_i|, |s2_i|)).

    Both arrays are sorted descending before pairing, so the comparison is
    between multisets.
    """
    s1 = np.sort(np.asarray(s1, dtype=float))[::-1]
    s2 = np.sort(np.asarray(s2, dtype=float))[::-1]
    if s1.shape != s2.shape:
        raise ValueError(f"spectrum dimension mismatch: {s1.size} vs {s2.size}")
    scale = 1 + np.maximum(np.abs(s1), np.abs(s2))
    return float(np.max(np.abs(s1 - s2) / scale))


def spectra_equal(s1, s2, tol=1e-9):
    return spectrum_deviation(s1, s2) <= tol
