import numpy as np
import pytest
from hypothesis import given
from numpy.testing import assert_allclose

from tensor_numrange import catalog
from tensor_numrange.errors import NotHermitianError, NotSquareError, SingularTensorError
from tensor_numrange.generators import random_hermitian, random_tensor, random_unitary
from tensor_numrange.spectral import (
    determinant,
    eigenvalues,
    hermitian_eigensystem,
    inverse,
    polar_decompose,
    rank,
    residual,
    same_multiset,
    singular_values,
    sort_values,
    spectral_norm,
    spectral_radius,
    svd,
)
from tensor_numrange.tensor import Tensor, direct_sum, frobenius_norm, identity
from tensor_numrange.unfold import unfold

from conftest import seeds, square_tensors


def test_diag_six_spectrum_and_eigentensors():
    A = catalog.diag_six()
    spec = eigenvalues(A, want_vectors=True)
    assert_allclose(sort_values(spec.values), [-1, 1, 2, 3, 8, 9], atol=1e-10)
    for lam, X in zip(spec.values, spec.eigentensors):
        assert X.shape == (3, 2)
        assert residual(A, lam, X) < 1e-12
        assert frobenius_norm(X) == pytest.approx(1.0)


def test_complex_diag_spectrum():
    vals = eigenvalues(catalog.complex_diag()).values
    assert same_multiset(vals, [1j, 1 + 1j, 3 + 1j, 4, 5 + 1j, 6 + 1j], 1e-10)


def test_ones_row_spectrum():
    vals = eigenvalues(catalog.ones_row()).values
    assert same_multiset(vals, [0, 0, 0, 0, 0, 1], 1e-10)
    assert rank(catalog.ones_row()) == 1


def test_dense_real_spectrum_golden():
    vals = eigenvalues(catalog.dense_real()).values
    ref = np.linalg.eigvals(unfold(catalog.dense_real()))
    assert same_multiset(vals, ref, 1e-10)
    assert spectral_norm(catalog.dense_real()) == pytest.approx(19.933067128879884, abs=1e-10)


def test_range_hermitian_eigensystem():
    spec = hermitian_eigensystem(catalog.range_hermitian())
    assert np.all(np.diff(spec.values) <= 0)
    assert_allclose(spec.values, [12.9926, 1.0052, -0.9822, -7.0156], atol=1e-4)
    with pytest.raises(NotHermitianError):
        hermitian_eigensystem(catalog.range_sparse())


def test_direct_sum_spectrum_is_union():
    A, B = catalog.diag_six(), catalog.complex_diag()
    got = eigenvalues(direct_sum(A, B)).values
    want = np.concatenate([eigenvalues(A).values, eigenvalues(B).values])
    assert same_multiset(got, want, 1e-10)


def test_direct_sum_all_modes_adds_zero_eigenvalues():
    A, B = catalog.dense_real(), catalog.range_sparse()
    got = eigenvalues(direct_sum(A, B, modes="all")).values
    want = np.concatenate([eigenvalues(A).values, eigenvalues(B).values, np.zeros(8)])
    assert same_multiset(got, want, 1e-9)


@given(square_tensors())
def test_eigenvalues_match_numpy(A):
    assert same_multiset(eigenvalues(A).values, np.linalg.eigvals(unfold(A)), 1e-9)


@given(square_tensors(), seeds)
def test_determinant_multiplicative_and_eigen_product(A, seed):
    B = random_tensor(np.random.default_rng(seed), A.row_shape)
    dA, dB = determinant(A), determinant(B)
    assert abs(determinant(A @ B) - dA * dB) <= 1e-8 * abs(dA * dB)
    assert abs(dA - np.prod(eigenvalues(A).values)) <= 1e-8 * abs(dA)


@given(square_tensors())
def test_svd_factors(A):
    f = svd(A)
    assert f.reconstruct().allclose(A, atol=1e-11)
    I = identity(A.row_shape)
    assert (f.left.H @ f.left).allclose(I, atol=1e-12)
    assert (f.right.H @ f.right).allclose(I, atol=1e-12)
    assert_allclose(f.singular_values, np.linalg.svd(unfold(A), compute_uv=False), atol=1e-11)
    assert spectral_norm(A) ** 2 == pytest.approx(spectral_radius(A.H @ A), rel=1e-10)


def test_singular_values_non_square_partition():
    A = Tensor(np.arange(1.0, 13.0).reshape(2, 3, 2), 1)
    assert_allclose(singular_values(A), np.linalg.svd(unfold(A), compute_uv=False), atol=1e-12)
    with pytest.raises(NotSquareError):
        eigenvalues(A)


@given(square_tensors())
def test_inverse_and_polar(A):
    Ainv = inverse(A)
    assert (A @ Ainv).allclose(identity(A.row_shape), atol=1e-8)
    U, P = polar_decompose(A)
    assert (U @ P).allclose(A, atol=1e-10 * max(1, frobenius_norm(A)))
    assert (U.H @ U).allclose(identity(A.row_shape), atol=1e-12)
    assert_allclose(np.sort(hermitian_eigensystem(P).values), np.sort(singular_values(A)), atol=1e-10)


def test_singular_inverse_raises_with_stage():
    with pytest.raises(SingularTensorError) as info:
        inverse(catalog.ones_row())
    assert info.value.stage == "inverse"
    with pytest.raises(SingularTensorError):
        polar_decompose(catalog.range_mixed())


@given(seeds)
def test_unitary_tensors(seed):
    rng = np.random.default_rng(seed)
    U = random_unitary(rng, (2, 3))
    assert_allclose(np.abs(eigenvalues(U).values), 1, atol=1e-12)
    assert_allclose(singular_values(U), 1, atol=1e-12)
    assert abs(abs(determinant(U)) - 1) < 1e-12
    H = random_hermitian(rng, (3, 2))
    assert_allclose(np.abs(eigenvalues(H).values.imag), 0, atol=1e-12)


def test_same_multiset_is_matching_not_sorting():
    assert same_multiset([1, 1 + 1e-12j, 2], [2, 1, 1], 1e-10)
    assert not same_multiset([1, 1, 2], [1, 2, 2], 1e-10)
    assert not same_multiset([1, 2], [1, 2, 3], 1e-10)
