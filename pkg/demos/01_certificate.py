# Partial transpose on one factor preserves spectra of product matrices
# but not of the entangled certificate C0.
import numpy as np

from tensorpreservers import DimProfile, certificate_matrices, partial_transpose, spectrum
from tensorpreservers import check_global_form, check_spectrum_preservation, partial_transpose_map

p = DimProfile((2, 2))
(C0,) = certificate_matrices(p)
print("C0 =\n", C0.real)
print("spectrum of C0:        ", np.round(spectrum(C0), 12))
print("spectrum of C0 after PT:", np.round(spectrum(partial_transpose(C0, p, 2)), 12))

phi = partial_transpose_map(p, 2)
print("product check:", check_spectrum_preservation(phi, p).verdict)
rep = check_global_form(phi, p)
print("global check: ", rep.verdict, "at", rep.first_counterexample.label)
