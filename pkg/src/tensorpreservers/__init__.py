"""Spectrum and spectral-radius preservers on tensor products of Hermitian matrices.

Submodules:

- ``hermitian``: validation, eigensystems, spectra, spectral radii
- ``tensor``: Kronecker products, partial transposes, vector reshaping
- ``schmidt``: Schmidt decompositions and Schmidt-rank-restricted norms
- ``superop``: maps on H_N in a fixed Hermitian basis, canonical forms
- ``analysis``: preservation checks, certificates, canonical decomposition
- ``io``: JSON wire formats
"""

from .analysis import (
    DECOMP_TOL,
    CheckReport,
    DecompositionResult,
    Dichotomy,
    certificate_matrices,
    check_global_form,
    check_radius_preservation,
    check_spectrum_preservation,
    decompose_canonical,
    embedded_block_test,
    recover_conjugation,
    saitoh_dichotomy_check,
)
from .hermitian import as_hermitian, eigensystem, spectra_equal, spectral_radius, spectrum
from .schmidt import (
    k_operator_norm,
    k_vector_norm,
    schmidt_decompose,
    schmidt_rank_truncate,
)
from .superop import (
    CanonicalForm,
    PreserverMap,
    apply,
    canonical_map,
    compose,
    conjugation_map,
    haar_unitary,
    identity_map,
    partial_transpose_map,
    random_canonical_form,
    scale,
    transpose_map,
)
from .tensor import DimProfile, kron, kron_all, partial_transpose, reshape_vector

__version__ = "0.1.0"
