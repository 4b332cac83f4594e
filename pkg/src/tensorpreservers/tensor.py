"""Tensor-product index machinery.

Flat indices use big-endian mixed radix: the first factor is the most
significant digit, which is the layout produced by ``np.kron``.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = [
    "DimProfile",
    "kron",
    "kron_all",
    "partial_transpose",
    "reshape_vector",
    "unreshape",
]


@dataclass(frozen=True)
class DimProfile:
    """Ordered factor dimensions (n_1, ..., n_m), each at least 2."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 1:
            raise ValueError("a profile needs at least one factor")
        if any(d < 2 for d in dims):
            raise ValueError(f"every factor dimension must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def parse(cls, text):
        """Build from a comma list such as ``"2,3"``."""
        try:
            dims = [int(tok) for tok in str(text).split(",") if tok.strip()]
        except ValueError:
            raise ValueError(f"cannot parse dims {text!r}") from None
        return cls(tuple(dims))

    @property
    def m(self):
        return len(self.dims)

    @property
    def N(self):
        return int(np.prod(self.dims))

    def flat_index(self, components):
        """Zero-based flat index of the tensor index ``(j_1, ..., j_m)``."""
        return int(np.ravel_multi_index(tuple(components), self.dims))

    def components(self, flat):
        return tuple(int(j) for j in np.unravel_index(flat, self.dims))

    def to_json(self):
        return {"dims": list(self.dims)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["dims"]))


def kron(A, B):
    return np.kron(np.asarray(A), np.asarray(B))


def kron_all(factors):
    """Left-associated Kronecker product of a non-empty list of matrices."""
    factors = list(factors)
    if not factors:
        raise ValueError("kron_all needs at least one factor")
    return reduce(kron, factors[1:], np.asarray(factors[0]))


def _check_slot(profile, slot):
    if not 1 <= slot <= profile.m:
        raise ValueError(f"slot {slot} out of range 1..{profile.m}")


def partial_transpose(X, profile, slot):
    """Transpose the ``slot``-th tensor factor (1-based) of a square matrix.

    Works entrywise on any N x N array, so non-product inputs are handled.
    """
    X = np.asarray(X)
    _check_slot(profile, slot)
    N = profile.N
    if X.shape != (N, N):
        raise ValueError(f"matrix shape {X.shape} does not match profile size {N}")
    m = profile.m
    T = X.reshape(profile.dims + profile.dims)
    T = np.swapaxes(T, slot - 1, m + slot - 1)
    return T.reshape(N, N)


def reshape_vector(w, m, n):
    """Identify w in C^{mn} with the m x n matrix [w], filled row by row."""
    w = np.asarray(w)
    if w.ndim != 1 or w.size != m * n:
        raise ValueError(f"vector of length {w.size} cannot be reshaped to {m}x{n}")
    return w.reshape(m, n)


def unreshape(W):
    """Inverse of ``reshape_vector``."""
    return np.asarray(W).reshape(-1)
