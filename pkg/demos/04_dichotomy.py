# Extending a map on H_2 by the identity on a second factor: conjugations
# stay spectrum preserving on the whole space, the transpose only on products.
from tensorpreservers import conjugation_map, haar_unitary, identity_map, saitoh_dichotomy_check, scale, transpose_map

for name, phi in [("conjugation", conjugation_map(haar_unitary(2, 5))),
                  ("transpose", transpose_map(2)),
                  ("2 * identity", scale(identity_map(2), 2))]:
    print(f"{name:12s} -> {saitoh_dichotomy_check(phi, 2).value}")
