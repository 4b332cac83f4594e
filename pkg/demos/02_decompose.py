# Build a random canonical form, forget it, and recover it from the map alone.
import numpy as np

from tensorpreservers import DimProfile, canonical_map, decompose_canonical, random_canonical_form

p = DimProfile((2, 3))
form = random_canonical_form(p, seed=11, sign=-1, flags=("t", "id"))
phi = canonical_map(form)

res = decompose_canonical(phi, p, mode="radius")
print("success:", res.success, " residual: %.2e" % res.residual)
print("sign:", res.form.sign, " flags:", res.form.flags)
print("unitary recovered up to phase:",
      np.allclose(res.form.unitary, form.unitary, atol=1e-8))

# a small generic perturbation is no longer of canonical form
noisy = type(phi)(phi.N, phi.matrix + 1e-3 * np.random.default_rng(0).standard_normal(phi.matrix.shape))
bad = decompose_canonical(noisy, p, mode="radius")
print("perturbed:", bad.success, " best residual: %.2e" % bad.residual, "stage:", bad.stage)
