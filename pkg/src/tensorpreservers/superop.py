"""Real-linear maps on Hermitian matrices in a fixed orthonormal basis.

The basis of H_N (inner product trace(XY)) is ordered as

    E_11, ..., E_NN,
    then for each pair j < k in lexicographic order:
        S_jk = (E_jk + E_kj) / sqrt(2),  K_jk = i (E_jk - E_kj) / sqrt(2).

A map is stored as the real N^2 x N^2 matrix whose column alpha holds the
coordinates of phi(H_alpha). Real coordinates make Hermiticity preservation
structural. The ordering is part of the file format ("herm-v1").
"""

import itertools
from dataclasses import dataclass

import numpy as np

from .hermitian import as_hermitian
from .io import FormatError, matrix_from_json, matrix_to_json
from .tensor import DimProfile, partial_transpose

__all__ = [
    "BASIS_NAME",
    "basis_pairs",
    "basis_element",
    "hermitian_basis",
    "to_coords",
    "from_coords",
    "PreserverMap",
    "apply",
    "apply_complex",
    "map_from_function",
    "identity_map",
    "conjugation_map",
    "transpose_map",
    "partial_transpose_map",
    "flag_transpose_map",
    "CanonicalForm",
    "canonical_map",
    "compose",
    "scale",
    "haar_unitary",
    "fix_phase",
    "random_canonical_form",
    "FLAG_NAMES",
]

BASIS_NAME = "herm-v1"
FLAG_NAMES = ("id", "t")
_SQRT2 = np.sqrt(2.0)


def basis_pairs(N):
    return list(itertools.combinations(range(N), 2))


def basis_element(N, alpha):
    """The alpha-th basis matrix (zero-based)."""
    if not 0 <= alpha < N * N:
        raise IndexError(f"basis index {alpha} out of range for N={N}")
    H = np.zeros((N, N), dtype=complex)
    if alpha < N:
        H[alpha, alpha] = 1
        return H
    j, k = basis_pairs(N)[(alpha - N) // 2]
    if (alpha - N) % 2 == 0:
        H[j, k] = H[k, j] = 1 / _SQRT2
    else:
        H[j, k] = 1j / _SQRT2
        H[k, j] = -1j / _SQRT2
    return H


def hermitian_basis(N):
    return [basis_element(N, a) for a in range(N * N)]


def _upper(N):
    rows, cols = np.triu_indices(N, 1)
    return rows, cols


def to_coords(X):
    """Coordinates trace(H_alpha X) of a Hermitian X.

    For a non-Hermitian X the same formula is the complex-linear extension.
    """
    X = np.asarray(X)
    N = X.shape[0]
    r, c = _upper(N)
    upper, lower = X[r, c], X[c, r]
    sym = (upper + lower) / _SQRT2
    anti = 1j * (lower - upper) / _SQRT2
    out = np.empty(N * N, dtype=np.result_type(X.dtype, complex))
    out[:N] = np.diagonal(X)
    out[N::2] = sym
    out[N + 1::2] = anti
    if np.isrealobj(X) or np.all(np.abs(out.imag) == 0):
        return out.real.copy()
    return out


def from_coords(c, N):
    c = np.asarray(c)
    X = np.zeros((N, N), dtype=complex)
    X[np.diag_indices(N)] = c[:N]
    r, k = _upper(N)
    s, a = c[N::2], c[N + 1::2]
    X[r, k] = (s + 1j * a) / _SQRT2
    X[k, r] = (s - 1j * a) / _SQRT2
    return X


@dataclass(frozen=True)
class PreserverMap:
    """A real-linear map H_N -> H_N by its coordinate matrix."""

    N: int
    matrix: np.ndarray

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=float)
        if M.shape != (self.N ** 2, self.N ** 2):
            raise ValueError(f"map matrix must be {self.N**2}x{self.N**2}, got {M.shape}")
        if not np.all(np.isfinite(M)):
            raise ValueError("map matrix has non-finite entries")
        object.__setattr__(self, "matrix", M)

    def __call__(self, X):
        return apply(self, X)

    def to_json(self):
        return {"N": self.N, "basis": BASIS_NAME, "matrix": self.matrix.tolist()}

    @classmethod
    def from_json(cls, obj):
        if obj.get("basis") != BASIS_NAME:
            raise FormatError(f"map: field 'basis' must be {BASIS_NAME!r}, got {obj.get('basis')!r}")
        N = obj.get("N")
        if not isinstance(N, int) or isinstance(N, bool) or N < 1:
            raise FormatError("map: field 'N' must be a positive integer")
        try:
            return cls(N, np.array(obj.get("matrix"), dtype=float))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"map: field 'matrix' invalid ({exc})") from None


def _check_size(phi, X):
    if X.shape != (phi.N, phi.N):
        raise ValueError(f"input of shape {X.shape} does not match map size N={phi.N}")


def apply(phi, X):
    X = as_hermitian(X)
    _check_size(phi, X)
    return from_coords(phi.matrix @ to_coords(X).real, phi.N)


def apply_complex(phi, X):
    """Complex-linear extension: phi(X) = phi(Re X) + i phi(Im X).

    Here Re X = (X + X*)/2 and Im X = (X - X*)/(2i) are the Hermitian parts.
    """
    X = np.asarray(X, dtype=complex)
    _check_size(phi, X)
    re = (X + X.conj().T) / 2
    im = (X - X.conj().T) / 2j
    return apply(phi, re) + 1j * apply(phi, im)


def map_from_function(f, N):
    """Representation of a Hermiticity-preserving linear ``f`` on H_N."""
    cols = [to_coords(as_hermitian(f(H), tol=1e-9)).real for H in hermitian_basis(N)]
    return PreserverMap(N, np.column_stack(cols))


def identity_map(N):
    return PreserverMap(N, np.eye(N * N))


def _check_unitary(U, tol):
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"unitary must be square, got shape {U.shape}")
    dev = np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))
    if dev > tol:
        raise ValueError(f"matrix is not unitary: max-abs(U*U - I) = {dev:.3e}")
    return U


def conjugation_map(U):
    U = _check_unitary(U, 1e-8)
    return map_from_function(lambda X: U @ X @ U.conj().T, U.shape[0])


def transpose_map(N):
    return map_from_function(lambda X: X.T, N)


def partial_transpose_map(profile, slot):
    return map_from_function(lambda X: partial_transpose(X, profile, slot), profile.N)


def flag_transpose_map(profile, flags):
    """Composition of partial transposes at the slots flagged "t"."""
    return map_from_function(_flag_transposes(profile, flags), profile.N)


def compose(phi, psi):
    """phi after psi."""
    if phi.N != psi.N:
        raise ValueError(f"cannot compose maps of sizes {phi.N} and {psi.N}")
    return PreserverMap(phi.N, phi.matrix @ psi.matrix)


def scale(phi, c):
    return PreserverMap(phi.N, float(c) * phi.matrix)


def haar_unitary(N, seed):
    """Haar-random N x N unitary from the QR of a complex Ginibre matrix.

    The phases of R's diagonal are moved into Q so the distribution is Haar.
    """
    if N < 1:
        raise ValueError("N must be positive")
    rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / _SQRT2
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def fix_phase(U, tol=1e-12):
    """Rotate the global phase so the first nonzero entry of column 0 is real positive."""
    U = np.asarray(U, dtype=complex)
    col = U[:, 0]
    idx = np.flatnonzero(np.abs(col) > tol * max(1.0, np.max(np.abs(col))))
    if idx.size == 0:
        return U
    z = col[idx[0]]
    if z.imag == 0 and z.real > 0:
        return U
    V = U * (abs(z) / z)
    V[idx[0], 0] = abs(z)
    return V


@dataclass(frozen=True)
class CanonicalForm:
    """phi(A_1 (x) ... (x) A_m) = sign * U (f_1(A_1) (x) ... (x) f_m(A_m)) U*.

    ``flags`` holds one of "id" / "t" per factor. The unitary is stored with
    the global-phase convention of ``fix_phase``.
    """

    sign: int
    unitary: np.ndarray
    flags: tuple
    profile: DimProfile

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        flags = tuple(self.flags)
        if len(flags) != self.profile.m or any(f not in FLAG_NAMES for f in flags):
            raise ValueError(f"flags must be {self.profile.m} entries from {FLAG_NAMES}, got {flags}")
        U = _check_unitary(self.unitary, 1e-10)
        if U.shape[0] != self.profile.N:
            raise ValueError(f"unitary size {U.shape[0]} does not match profile size {self.profile.N}")
        object.__setattr__(self, "flags", flags)
        object.__setattr__(self, "sign", int(self.sign))
        object.__setattr__(self, "unitary", fix_phase(U))

    def apply_to_factors(self, factors):
        """Direct evaluation on a product input, bypassing any representation."""
        out = None
        for f, A in zip(self.flags, factors):
            A = np.asarray(A)
            A = A.T if f == "t" else A
            out = A if out is None else np.kron(out, A)
        U = self.unitary
        return self.sign * U @ out @ U.conj().T

    def to_json(self):
        return {
            "sign": self.sign,
            "dims": list(self.profile.dims),
            "flags": list(self.flags),
            "unitary": matrix_to_json(self.unitary),
        }

    @classmethod
    def from_json(cls, obj):
        for key in ("sign", "dims", "flags", "unitary"):
            if key not in obj:
                raise FormatError(f"canonical form: missing field {key!r}")
        if obj["sign"] not in (1, -1):
            raise FormatError("canonical form: field 'sign' must be 1 or -1")
        try:
            profile = DimProfile(tuple(obj["dims"]))
        except (TypeError, ValueError) as exc:
            raise FormatError(f"canonical form: field 'dims' invalid ({exc})") from None
        try:
            return cls(obj["sign"], matrix_from_json(obj["unitary"]), tuple(obj["flags"]), profile)
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(f"canonical form: {exc}") from None


def _flag_transposes(profile, flags):
    """Composition of partial transposes at the slots flagged "t"."""
    slots = [p + 1 for p, f in enumerate(flags) if f == "t"]

    def f(X):
        for p in slots:
            X = partial_transpose(X, profile, p)
        return X

    return f


def canonical_map(c):
    U, Uh = c.unitary, c.unitary.conj().T
    pt = _flag_transposes(c.profile, c.flags)
    return map_from_function(lambda X: c.sign * (U @ pt(X) @ Uh), c.profile.N)


def random_canonical_form(profile, seed, sign=1, flags=None):
    """Haar unitary and, unless given, uniformly random flags."""
    rng = np.random.default_rng(seed)
    if flags is None:
        flags = tuple(FLAG_NAMES[b] for b in rng.integers(0, 2, profile.m))
    U = haar_unitary(profile.N, rng)
    return CanonicalForm(sign, U, tuple(flags), profile)
