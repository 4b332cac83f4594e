# Schmidt coefficients and the Schmidt-rank-restricted norms.
import numpy as np

from tensorpreservers import DimProfile, certificate_matrices, k_operator_norm, k_vector_norm, schmidt_decompose
from tensorpreservers.schmidt import sampled_product_norm

bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
print("Schmidt coefficients of Bell:", schmidt_decompose(bell, 2, 2).coefficients)
print("||bell||_1 =", k_vector_norm(bell, 2, 2, 1), " 1/sqrt2 =", 1 / np.sqrt(2))

(C0,) = certificate_matrices(DimProfile((2, 2)))
print("|||C0|||_1 (alternating) =", k_operator_norm(C0, 2, 2, 1))
print("|||C0|||_1 (100k samples) >=", sampled_product_norm(C0, 2, 2, samples=100_000))
print("|||C0|||_2 =", k_operator_norm(C0, 2, 2, 2), " operator norm =", np.linalg.norm(C0, 2))
