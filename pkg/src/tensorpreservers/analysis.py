"""Spectrum / spectral-radius preservation checks and canonical decomposition.

A map phi on H_N (N = n_1 ... n_m) that preserves the spectrum of every
product input A_1 (x) ... (x) A_m has the form

    phi(A_1 (x) ... (x) A_m) = U (f_1(A_1) (x) ... (x) f_m(A_m)) U*

with U unitary and each f_j the identity or the transpose; preserving only
the spectral radius allows an extra global sign. The checkers below test the
hypothesis on sampled and structured product inputs, and
``decompose_canonical`` recovers (sign, U, flags) when the form holds.

Every sampled input i is drawn from a generator seeded with ``(seed, i)``, so
reports do not depend on evaluation order.
"""

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hermitian import as_hermitian, random_hermitian, spectrum, spectrum_deviation
from .io import matrix_to_json
from .superop import (
    FLAG_NAMES,
    CanonicalForm,
    PreserverMap,
    apply,
    apply_complex,
    basis_element,
    compose,
    fix_phase,
    flag_transpose_map,
    from_coords,
    haar_unitary,
    map_from_function,
    scale,
)
from .tensor import DimProfile, kron_all, partial_transpose

__all__ = [
    "DECOMP_TOL",
    "SHIFTS",
    "Counterexample",
    "CheckReport",
    "random_product_factors",
    "product_probes",
    "check_spectrum_preservation",
    "check_radius_preservation",
    "certificate_matrices",
    "check_global_form",
    "shift_pattern_holds",
    "embedded_block_test",
    "ConjugationRecovery",
    "recover_conjugation",
    "try_flags",
    "DecompositionResult",
    "decompose_canonical",
    "identity_extension",
    "Dichotomy",
    "saitoh_dichotomy_check",
]

DECOMP_TOL = 1e-8
SHIFTS = (-1.0, 0.0, 1.0, 10.0)
MAX_PARTIES = 4


@dataclass
class Counterexample:
    index: int
    label: str
    input: np.ndarray
    input_spectrum: np.ndarray
    output_spectrum: np.ndarray
    factors: Optional[list] = None

    def to_json(self):
        return {
            "index": self.index,
            "label": self.label,
            "factors": None if self.factors is None else [matrix_to_json(A) for A in self.factors],
            "input": matrix_to_json(self.input),
            "input_spectrum": [float(x) for x in self.input_spectrum],
            "output_spectrum": [float(x) for x in self.output_spectrum],
        }


@dataclass
class CheckReport:
    mode: str
    verdict: str
    samples: int
    worst_spectrum_deviation: float
    first_counterexample: Optional[Counterexample] = None

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        ce = self.first_counterexample
        return {
            "mode": self.mode,
            "verdict": self.verdict,
            "samples": self.samples,
            "worst_spectrum_deviation": self.worst_spectrum_deviation,
            "first_counterexample": None if ce is None else ce.to_json(),
        }


def _unit(n, j):
    E = np.zeros((n, n), dtype=complex)
    E[j, j] = 1
    return E


def random_product_factors(profile, rng):
    """Factors V diag(d) V* with Haar V and d uniform on [-1, 1]^n."""
    rng = np.random.default_rng(rng)
    factors = []
    for n in profile.dims:
        V = haar_unitary(n, rng)
        d = rng.uniform(-1, 1, n)
        factors.append((V * d) @ V.conj().T)
    return factors


def product_probes(profile, seed, radius=False):
    """Deterministic product inputs mirroring the structural probes.

    Yields ``(label, factors)``: all products of diagonal matrix units, the
    identity, single-slot shifts E_11 (x) ... (x) (B + tI) (x) ... and, for the
    radius variant, (E_jj +/- E_ss) in one slot against random diagonal
    orthogonal matrices elsewhere.
    """
    rng = np.random.default_rng([seed, 0])
    dims = profile.dims
    for idx in itertools.product(*(range(n) for n in dims)):
        yield f"units{idx}", [_unit(n, j) for n, j in zip(dims, idx)]
    yield "identity", [np.eye(n, dtype=complex) for n in dims]
    for p, n in enumerate(dims):
        B = random_hermitian(n, rng)
        for t in SHIFTS:
            factors = [_unit(d, 0) for d in dims]
            factors[p] = B + t * np.eye(n)
            yield f"shift(slot={p + 1}, t={t:g})", factors
    if radius:
        for p, n in enumerate(dims):
            for j, s in itertools.combinations(range(n), 2):
                for sgn in (1, -1):
                    factors = [np.diag(rng.choice([-1.0, 1.0], d)).astype(complex) for d in dims]
                    factors[p] = _unit(n, j) + sgn * _unit(n, s)
                    yield f"pair(slot={p + 1}, {j},{s}, {'+' if sgn > 0 else '-'})", factors


def _radius_deviation(s_in, s_out):
    r1, r2 = np.max(np.abs(s_in)), np.max(np.abs(s_out))
    return float(abs(r1 - r2) / (1 + max(r1, r2)))


def _deviation(mode, s_in, s_out):
    if mode == "spectrum":
        return spectrum_deviation(s_in, s_out)
    return _radius_deviation(s_in, s_out)


def _check_dims(phi, profile):
    if phi.N != profile.N:
        raise ValueError(f"map acts on H_{phi.N} but profile {profile.dims} has N={profile.N}")


class _Tally:
    """Accumulates worst deviation and the lowest-index counterexample."""

    def __init__(self, mode, tol):
        self.mode, self.tol = mode, tol
        self.count = 0
        self.worst = 0.0
        self.first = None

    def test(self, phi, label, X, factors=None):
        s_in = spectrum(X)
        s_out = spectrum(apply(phi, X))
        dev = _deviation(self.mode, s_in, s_out)
        self.worst = max(self.worst, dev)
        if dev > self.tol and self.first is None:
            self.first = Counterexample(self.count, label, X, s_in, s_out, factors)
        self.count += 1

    def report(self):
        verdict = "fail" if self.first is not None else "pass"
        return CheckReport(self.mode, verdict, self.count, self.worst, self.first)


def _run_product_checks(tally, phi, profile, samples, seed):
    for label, factors in product_probes(profile, seed, radius=tally.mode == "radius"):
        tally.test(phi, label, kron_all(factors), factors)
    for i in range(samples):
        factors = random_product_factors(profile, np.random.default_rng([seed, 1, i]))
        tally.test(phi, f"sample {i}", kron_all(factors), factors)


def check_spectrum_preservation(phi, profile, samples=200, seed=0, tol=1e-9):
    _check_dims(phi, profile)
    tally = _Tally("spectrum", tol)
    _run_product_checks(tally, phi, profile, samples, seed)
    return tally.report()


def check_radius_preservation(phi, profile, samples=200, seed=0, tol=1e-9):
    _check_dims(phi, profile)
    tally = _Tally("radius", tol)
    _run_product_checks(tally, phi, profile, samples, seed)
    return tally.report()


def _two_slot_block(n1, n2):
    """E11(x)E11 + E22(x)E22 + E12(x)E12 + E21(x)E21 in the top-left corners."""
    block = np.zeros((n1 * n2, n1 * n2), dtype=complex)
    for a, b in itertools.product(range(2), repeat=2):
        Ea = np.zeros((n1, n1))
        Ea[a, b] = 1
        Eb = np.zeros((n2, n2))
        Eb[a, b] = 1
        block += np.kron(Ea, Eb)
    return block


def certificate_matrices(profile):
    """The m - 1 non-product certificates, one per adjacent slot pair."""
    dims = profile.dims
    if profile.m < 2:
        raise ValueError("certificates need at least two factors")
    out = []
    for i in range(profile.m - 1):
        parts = [np.eye(n, dtype=complex) for n in dims[:i]]
        parts.append(_two_slot_block(dims[i], dims[i + 1]))
        parts += [np.eye(n, dtype=complex) for n in dims[i + 2:]]
        out.append(kron_all(parts))
    return out


def check_global_form(phi, profile, samples=200, seed=0, tol=1e-9, mode="spectrum"):
    """Product-input check plus the certificates.

    A pass means the map is (sign times) X -> U X U* or X -> U X^t U* on all
    of H_N, not only on product inputs.
    """
    if mode not in ("spectrum", "radius"):
        raise ValueError(f"mode must be 'spectrum' or 'radius', got {mode!r}")
    _check_dims(phi, profile)
    tally = _Tally(mode, tol)
    _run_product_checks(tally, phi, profile, samples, seed)
    for i, C in enumerate(certificate_matrices(profile)):
        tally.test(phi, f"certificate {i + 1}", C)
    report = tally.report()
    report.mode = f"global-{mode}"
    return report


def shift_pattern_holds(A, n, t, tol=1e-9):
    """Whether sigma(A + t(I_n (+) 0)) = {a_1 + t, ..., a_n + t, 0, ..., 0}.

    The a_i are sigma(A) with its m - n eigenvalues of smallest modulus
    removed; those removed values must be zero for the pattern to hold.
    """
    A = as_hermitian(A)
    m = A.shape[0]
    s = spectrum(A)
    order = np.argsort(np.abs(s), kind="stable")
    zeros, a = s[order[: m - n]], s[order[m - n:]]
    if np.any(np.abs(zeros) > tol * (1 + np.max(np.abs(s)))):
        return False
    shift = np.diag(np.r_[np.ones(n), np.zeros(m - n)])
    expected = np.r_[a + t, np.zeros(m - n)]
    return spectrum_deviation(spectrum(A + t * shift), expected) <= tol


def embedded_block_test(A, n, t_samples=(-10.0, -1.0, 1.0, 10.0), tol=1e-9):
    """Shifted-spectrum hypothesis on every sampled t, and A = B (+) 0.

    True only when the hypothesis holds for all ``t_samples`` and A has no
    mass outside its top-left n x n block.
    """
    A = as_hermitian(A)
    m = A.shape[0]
    if not 1 <= n < m:
        raise ValueError(f"block size must satisfy 1 <= n < {m}, got {n}")
    if not all(shift_pattern_holds(A, n, t, tol) for t in t_samples):
        return False
    off = A.copy()
    off[:n, :n] = 0
    return bool(np.max(np.abs(off)) <= tol)


@dataclass
class ConjugationRecovery:
    success: bool
    unitary: np.ndarray
    residual: float
    unitarity_deviation: float
    stage: Optional[str] = None


def _basis_image(chi, alpha):
    return from_coords(chi.matrix[:, alpha], chi.N)


def recover_conjugation(chi, tol=DECOMP_TOL):
    """Find U with chi(X) = U X U* on H_N, or report why none was found.

    chi(E_11) = u_1 u_1* fixes the first column; then
    chi(E_1k) = (chi(S_1k) - i chi(K_1k)) / sqrt(2) = u_1 u_k*, so
    u_k = (chi(S_1k) + i chi(K_1k)) u_1 / sqrt(2).
    The assembled matrix is projected to the nearest unitary (polar factor)
    and the residual is measured over every basis element.
    """
    N = chi.N
    stage = None
    P1 = _basis_image(chi, 0)
    w, V = np.linalg.eigh(P1)
    if abs(w[-1] - 1) > tol or (N > 1 and np.max(np.abs(w[:-1])) > tol):
        stage = "rank-one"
    u1 = fix_phase(V[:, -1:])[:, 0]

    cols = [u1]
    for k in range(1, N):
        alpha = N + 2 * (k - 1)  # S_{1k}; K_{1k} follows it
        S, K = _basis_image(chi, alpha), _basis_image(chi, alpha + 1)
        cols.append((S + 1j * K) @ u1 / np.sqrt(2))
    U = np.column_stack(cols)

    deviation = float(np.max(np.abs(U.conj().T @ U - np.eye(N))))
    if stage is None and deviation > tol:
        stage = "unitarity"
    W, _, Vh = np.linalg.svd(U)
    U = fix_phase(W @ Vh)

    Uh = U.conj().T
    residual = 0.0
    for alpha in range(N * N):
        H = basis_element(N, alpha)
        diff = _basis_image(chi, alpha) - U @ H @ Uh
        residual = max(residual, float(np.max(np.abs(diff))))
    if stage is None and residual > tol:
        stage = "residual"
    return ConjugationRecovery(stage is None, U, residual, deviation, stage)


def try_flags(phi, profile, flags, sign=1, tol=DECOMP_TOL):
    """Attempt the decomposition with fixed sign and flags."""
    chi = compose(scale(phi, sign), flag_transpose_map(profile, flags))
    return recover_conjugation(chi, tol)


@dataclass
class DecompositionResult:
    success: bool
    residual: float
    form: Optional[CanonicalForm] = None
    stage: Optional[str] = None
    attempts: dict = field(default_factory=dict)

    def to_json(self):
        form = None if self.form is None else self.form.to_json()
        if self.success:
            return {"outcome": "success", "residual": self.residual, "canonical_form": form}
        return {
            "outcome": "failure",
            "best_residual": self.residual,
            "best_candidate": form,
            "stage": self.stage,
        }


def decompose_canonical(phi, profile, mode="spectrum", tol=DECOMP_TOL, max_parties=MAX_PARTIES):
    """Recover (sign, U, flags) with phi = sign * conj(U) o partial transposes.

    In radius mode the sign is read off phi(I), which must be close to +I or
    -I. All 2^m flag vectors are tried; at most one can succeed.
    """
    if mode not in ("spectrum", "radius"):
        raise ValueError(f"mode must be 'spectrum' or 'radius', got {mode!r}")
    _check_dims(phi, profile)
    if profile.m > max_parties:
        raise ValueError(f"{profile.m} factors exceeds the supported maximum of {max_parties}")

    N = profile.N
    sign = 1
    if mode == "radius":
        image = apply(phi, np.eye(N))
        gate = 1e-8 * N
        dev_plus = float(np.max(np.abs(image - np.eye(N))))
        dev_minus = float(np.max(np.abs(image + np.eye(N))))
        if dev_minus <= gate:
            sign = -1
        elif dev_plus > gate:
            return DecompositionResult(False, min(dev_plus, dev_minus), None, "sign")

    best = None
    attempts = {}
    for flags in itertools.product(FLAG_NAMES, repeat=profile.m):
        rec = try_flags(phi, profile, flags, sign, tol)
        attempts[",".join(flags)] = rec.residual
        if rec.success:
            form = CanonicalForm(sign, rec.unitary, flags, profile)
            return DecompositionResult(True, rec.residual, form, None, attempts)
        if best is None or rec.residual < best[0].residual:
            best = (rec, flags)
    rec, flags = best
    form = CanonicalForm(sign, rec.unitary, flags, profile)
    return DecompositionResult(False, rec.residual, form, rec.stage, attempts)


def identity_extension(phi_small, m):
    """Id_m (x) phi_small on H_{mn}, acting blockwise on the n x n blocks."""
    n = phi_small.N

    def f(X):
        out = np.zeros_like(X, dtype=complex)
        for i in range(m):
            for j in range(m):
                blk = X[i * n:(i + 1) * n, j * n:(j + 1) * n]
                out[i * n:(i + 1) * n, j * n:(j + 1) * n] = apply_complex(phi_small, blk)
        return out

    return map_from_function(f, m * n)


class Dichotomy(str, enum.Enum):
    DIRECT = "direct"
    PARTIAL_TRANSPOSE = "partial-transpose"
    NEITHER = "neither"


def saitoh_dichotomy_check(phi_small, m, samples=100, seed=0, tol=1e-9):
    """Classify Id_m (x) phi_small by comparing spectra on random C in H_{mn}.

    DIRECT when sigma((Id (x) phi)(C)) = sigma(C) on every sample,
    PARTIAL_TRANSPOSE when it equals sigma(PT_2(C)) on every sample.
    """
    if not isinstance(phi_small, PreserverMap):
        raise TypeError("phi_small must be a PreserverMap")
    n = phi_small.N
    profile = DimProfile((m, n))
    ext = identity_extension(phi_small, m)
    direct = partial = True
    for i in range(samples):
        C = random_hermitian(m * n, np.random.default_rng([seed, i]))
        s_out = spectrum(apply(ext, C))
        direct &= spectrum_deviation(s_out, spectrum(C)) <= tol
        partial &= spectrum_deviation(s_out, spectrum(partial_transpose(C, profile, 2))) <= tol
        if not (direct or partial):
            return Dichotomy.NEITHER
    if direct:
        return Dichotomy.DIRECT
    return Dichotomy.PARTIAL_TRANSPOSE
