import itertools
import json

import numpy as np
import pytest
from conftest import rand_herm

from tensorpreservers.hermitian import spectra_equal, spectrum
from tensorpreservers.io import FormatError
from tensorpreservers.superop import (
    CanonicalForm,
    PreserverMap,
    apply,
    basis_element,
    canonical_map,
    compose,
    conjugation_map,
    fix_phase,
    from_coords,
    haar_unitary,
    hermitian_basis,
    identity_map,
    map_from_function,
    partial_transpose_map,
    random_canonical_form,
    scale,
    to_coords,
    transpose_map,
)
from tensorpreservers.tensor import DimProfile, kron_all


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_basis_is_orthonormal(N):
    B = hermitian_basis(N)
    G = np.array([[np.trace(X @ Y) for Y in B] for X in B])
    np.testing.assert_allclose(G, np.eye(N * N), atol=1e-15)
    for H in B:
        np.testing.assert_array_equal(H, H.conj().T)


def test_basis_ordering_n3():
    s = 1 / np.sqrt(2)
    assert basis_element(3, 0)[0, 0] == 1 and basis_element(3, 2)[2, 2] == 1
    # pairs (0,1), (0,2), (1,2): S then K for each
    np.testing.assert_allclose(basis_element(3, 3), [[0, s, 0], [s, 0, 0], [0, 0, 0]])
    np.testing.assert_allclose(basis_element(3, 4), [[0, 1j * s, 0], [-1j * s, 0, 0], [0, 0, 0]])
    np.testing.assert_allclose(basis_element(3, 7), [[0, 0, 0], [0, 0, s], [0, s, 0]])
    np.testing.assert_allclose(basis_element(3, 8), [[0, 0, 0], [0, 0, 1j * s], [0, -1j * s, 0]])


def test_coordinates_round_trip():
    X = rand_herm(5, 1)
    c = to_coords(X)
    assert c.dtype == float
    np.testing.assert_allclose(c, [np.trace(H @ X).real for H in hermitian_basis(5)], atol=1e-14)
    np.testing.assert_allclose(from_coords(c, 5), X, atol=1e-14)


def test_apply_reproduces_columns():
    phi = PreserverMap(3, np.random.default_rng(0).standard_normal((9, 9)))
    for a, H in enumerate(hermitian_basis(3)):
        np.testing.assert_allclose(to_coords(apply(phi, H)), phi.matrix[:, a], atol=1e-15)
        out = apply(phi, H)
        np.testing.assert_array_equal(out, out.conj().T)


def test_identity_and_conjugation():
    X = rand_herm(4, 2)
    np.testing.assert_allclose(apply(identity_map(4), X), X, atol=1e-15)
    U = haar_unitary(4, 3)
    np.testing.assert_allclose(apply(conjugation_map(U), X), U @ X @ U.conj().T, atol=1e-12)
    np.testing.assert_allclose(conjugation_map(np.eye(4)).matrix, np.eye(16), atol=1e-15)
    assert spectra_equal(spectrum(apply(conjugation_map(U), X)), spectrum(X), 1e-9)
    with pytest.raises(ValueError):
        conjugation_map(np.diag([2.0, 1.0]))


def test_swap_conjugation(SWAP):
    A, B = rand_herm(2, 4), rand_herm(2, 5)
    np.testing.assert_allclose(apply(conjugation_map(SWAP), np.kron(A, B)), np.kron(B, A), atol=1e-14)


def test_transpose_maps(C0, SWAP):
    T = transpose_map(3)
    # K_jk is antisymmetric, so it flips sign
    np.testing.assert_allclose(apply(T, basis_element(3, 4)), -basis_element(3, 4))
    np.testing.assert_allclose(apply(transpose_map(4), C0), C0.T)
    np.testing.assert_array_equal(C0.T, C0)
    p = DimProfile((2, 2))
    np.testing.assert_allclose(apply(partial_transpose_map(p, 2), C0), SWAP, atol=1e-15)
    pt12 = compose(partial_transpose_map(p, 1), partial_transpose_map(p, 2))
    np.testing.assert_allclose(pt12.matrix, transpose_map(4).matrix, atol=1e-15)
    np.testing.assert_allclose(compose(T, T).matrix, np.eye(9), atol=1e-15)
    with pytest.raises(ValueError):
        partial_transpose_map(p, 0)


def test_partial_transposes_commute():
    p = DimProfile((2, 3, 2))
    maps = [partial_transpose_map(p, s) for s in (1, 2, 3)]
    for a, b in itertools.combinations(maps, 2):
        np.testing.assert_allclose(compose(a, b).matrix, compose(b, a).matrix, atol=1e-15)
    eye = conjugation_map(np.eye(p.N))
    np.testing.assert_allclose(compose(maps[0], eye).matrix, compose(eye, maps[0]).matrix, atol=1e-14)


def test_conjugation_is_homomorphism():
    U, V = haar_unitary(3, 1), haar_unitary(3, 2)
    lhs = compose(conjugation_map(U), conjugation_map(V)).matrix
    np.testing.assert_allclose(lhs, conjugation_map(U @ V).matrix, atol=1e-10)
    inv = compose(conjugation_map(U), conjugation_map(U.conj().T))
    np.testing.assert_allclose(inv.matrix, np.eye(9), atol=1e-10)


def test_scale_and_compose_errors():
    np.testing.assert_allclose(scale(identity_map(2), -1).matrix, -np.eye(4))
    with pytest.raises(ValueError):
        compose(identity_map(2), identity_map(3))


def test_haar_unitary():
    U = haar_unitary(2, 11)
    np.testing.assert_array_equal(U, haar_unitary(2, 11))
    for N in (1, 3, 8):
        V = haar_unitary(N, N)
        assert np.max(np.abs(V.conj().T @ V - np.eye(N))) <= 1e-10
    with pytest.raises(ValueError):
        haar_unitary(0, 1)


def test_haar_first_moment():
    # E|U_11|^2 = 1/N under Haar measure
    vals = [abs(haar_unitary(3, s)[0, 0]) ** 2 for s in range(4000)]
    assert np.mean(vals) == pytest.approx(1 / 3, abs=0.02)


def test_fix_phase():
    U = haar_unitary(3, 0) * np.exp(0.7j)
    V = fix_phase(U)
    assert V[0, 0].imag == 0 and V[0, 0].real > 0
    W = np.array([[0, 1], [1j, 0]])
    assert fix_phase(W)[1, 0] == 1


def test_canonical_examples():
    p = DimProfile((2, 2))
    I4 = np.eye(4)
    np.testing.assert_allclose(canonical_map(CanonicalForm(1, I4, ("id", "id"), p)).matrix, np.eye(16))
    A, B = rand_herm(2, 7), rand_herm(2, 8)
    out = apply(canonical_map(CanonicalForm(1, I4, ("id", "t"), p)), np.kron(A, B))
    np.testing.assert_allclose(out, np.kron(A, B.T), atol=1e-15)
    neg = canonical_map(CanonicalForm(-1, I4, ("id", "id"), p))
    np.testing.assert_allclose(neg.matrix, scale(identity_map(4), -1).matrix)
    X = rand_herm(4, 9)
    assert np.max(np.abs(spectrum(apply(neg, X)))) == pytest.approx(np.max(np.abs(spectrum(X))))


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (2, 2, 2)])
def test_representation_faithful(dims):
    p = DimProfile(dims)
    for seed in range(4):
        c = random_canonical_form(p, seed, sign=(-1) ** seed)
        phi = canonical_map(c)
        factors = [rand_herm(n, 30 + seed + i) for i, n in enumerate(dims)]
        np.testing.assert_allclose(apply(phi, kron_all(factors)), c.apply_to_factors(factors), atol=1e-10)


def test_canonical_form_validation():
    p = DimProfile((2, 2))
    with pytest.raises(ValueError):
        CanonicalForm(2, np.eye(4), ("id", "id"), p)
    with pytest.raises(ValueError):
        CanonicalForm(1, np.eye(4), ("id",), p)
    with pytest.raises(ValueError):
        CanonicalForm(1, np.eye(6), ("id", "id"), p)
    c = CanonicalForm(1, haar_unitary(4, 1) * 1j, ("t", "id"), p)
    assert c.unitary[0, 0].real > 0 and c.unitary[0, 0].imag == 0


def test_json_round_trips():
    p = DimProfile((2, 3))
    c = random_canonical_form(p, 7, sign=-1)
    back = CanonicalForm.from_json(json.loads(json.dumps(c.to_json())))
    np.testing.assert_array_equal(back.unitary, c.unitary)
    assert (back.sign, back.flags, back.profile) == (c.sign, c.flags, c.profile)
    phi = canonical_map(c)
    back = PreserverMap.from_json(json.loads(json.dumps(phi.to_json())))
    np.testing.assert_array_equal(back.matrix, phi.matrix)
    with pytest.raises(FormatError, match="basis"):
        PreserverMap.from_json({"N": 2, "basis": "other", "matrix": []})
    with pytest.raises(FormatError, match="sign"):
        CanonicalForm.from_json({**c.to_json(), "sign": 3})


def test_map_from_function_rejects_non_hermitian_output():
    with pytest.raises(ValueError):
        map_from_function(lambda X: X @ np.diag([1, 2j]), 2)
