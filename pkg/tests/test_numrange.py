import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from tensor_numrange import catalog, numrange
from tensor_numrange.errors import ConvergenceError, NotSquareError, SingularTensorError
from tensor_numrange.generators import (
    random_hermitian,
    random_isometry,
    random_normal,
    random_tensor,
    random_unit,
    random_unitary,
)
from tensor_numrange.numrange import (
    boundary,
    classify_unitary,
    contains_point,
    locate_point,
    membership_margin,
    numerical_radius,
    rayleigh,
    support_function,
    support_values,
    theta_grid,
)
from tensor_numrange.spectral import eigenvalues, spectral_norm
from tensor_numrange.tensor import Tensor, hermitian_part, identity, skew_hermitian_part
from tensor_numrange.unfold import unfold

from conftest import seeds, square_tensors


def numpy_support(A, thetas):
    M = unfold(A)
    out = []
    for t in thetas:
        R = np.exp(1j * t) * M
        out.append(np.linalg.eigvalsh((R + R.conj().T) / 2)[-1])
    return np.array(out)


def ellipse_support(a, b, c, thetas):
    """Support function of W([[a, c], [0, b]]): ellipse with foci a, b and minor axis |c|."""
    m = (a + b) / 2
    d = abs(a - b)
    u = (a - b) / d if d else 1.0
    major = math.sqrt(d * d + abs(c) ** 2) / 2
    minor = abs(c) / 2
    rot = np.exp(1j * np.asarray(thetas))
    return (rot * m).real + np.sqrt((major * (rot * u).real) ** 2 + (minor * (rot * u).imag) ** 2)


def test_theta_grid():
    g = theta_grid(8)
    assert g[0] == 0 and len(g) == 8
    assert_allclose(g[2], np.pi / 2)
    assert np.array_equal(theta_grid(500)[::5], theta_grid(100))
    with pytest.raises(ValueError):
        theta_grid(2)


def test_diag_six_range_is_interval():
    A = catalog.diag_six()
    assert numerical_radius(A, 2000) == pytest.approx(9.0, abs=1e-12)
    b = boundary(A, 8)
    assert b.points[0].real == pytest.approx(9.0) and b.points[4].real == pytest.approx(-1.0)
    assert_allclose(b.points.imag, 0, atol=1e-12)
    assert locate_point(A, 3.0) == "boundary"
    assert locate_point(A, 3.0 + 0.1j) == "outside"
    assert not contains_point(A, 9.5)


def test_uniform_rayleigh_quotient_on_diag_six():
    X = Tensor(np.full((3, 2), 1 / math.sqrt(6)))
    assert rayleigh(catalog.diag_six(), X) == pytest.approx(11 / 3, abs=1e-14)


@given(seeds)
def test_elliptical_range_oracle(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (complex(*rng.standard_normal(2)) for _ in range(3))
    A = Tensor(np.array([[a, c], [0, b]]), 1)
    thetas = theta_grid(64)
    assert_allclose(support_values(A, thetas), ellipse_support(a, b, c, thetas), atol=1e-12)


@given(square_tensors())
def test_support_matches_numpy_oracle(A):
    thetas = theta_grid(24)
    assert_allclose(support_values(A, thetas), numpy_support(A, thetas), atol=1e-11 * (1 + spectral_norm(A)))


def test_normal_range_is_eigenvalue_hull():
    A = catalog.complex_diag()
    lam = np.diag(unfold(A))
    thetas = theta_grid(90)
    want = np.max((np.exp(1j * thetas)[:, None] * lam[None, :]).real, axis=1)
    assert_allclose(support_values(A, thetas), want, atol=1e-12)
    w = numerical_radius(A, 2000)
    assert abs(6 + 1j) * math.cos(math.pi / 2000) <= w <= abs(6 + 1j)


@pytest.mark.parametrize(
    "name, w",
    [
        ("dense_real", 18.98526986158721),
        ("range_mixed", 5.083991845504519),
        ("range_sparse", 2.116247378434955),
        ("range_triangular", 2.23606797749979),
        ("range_hermitian", 12.992552605586976),
    ],
)
def test_radius_against_refined_oracle(name, w):
    got = numerical_radius(catalog.NAMED[name](), 2000)
    assert got <= w + 1e-12
    assert got >= w * math.cos(math.pi / 2000) - 1e-12


def test_support_function_eigentensor():
    A = catalog.range_sparse()
    h, X = support_function(A, 0.3)
    R = hermitian_part(complex(np.exp(0.3j)) * A)
    assert rayleigh(R, X).real == pytest.approx(h, abs=1e-12)
    z = rayleigh(A, X)
    assert (np.exp(0.3j) * z).real == pytest.approx(h, abs=1e-12)


def test_boundary_samples_and_certificate():
    for name, make in catalog.RANGE_TENSORS.items():
        A = make()
        b = boundary(A, 500)
        assert len(b) == 500
        assert b.is_certified(), name
        on_line = (np.exp(1j * b.thetas) * b.points).real - b.supports
        assert_allclose(on_line, 0, atol=1e-10)
        for lam in eigenvalues(A).values:
            assert contains_point(A, lam, 500, tol=1e-6), (name, lam)


def test_hermitian_range_is_real_interval():
    A = catalog.range_hermitian()
    pts = boundary(A, 360).points
    assert np.max(np.abs(pts.imag)) < 1e-10
    assert pts.real.max() == pytest.approx(12.992552605586976, abs=1e-10)
    assert pts.real.min() == pytest.approx(-7.0156, abs=1e-4)


def test_triangular_eigenvalues_on_boundary():
    A = catalog.range_triangular()
    for lam in (1j, 1, 1 + 1j, 2 + 1j):
        assert locate_point(A, lam, 500) != "outside"
    assert locate_point(A, 3 + 3j) == "outside"


def test_boundary_rejects_bad_input():
    with pytest.raises(NotSquareError):
        boundary(Tensor(np.ones((2, 3)), 1))
    with pytest.raises(ValueError):
        boundary(catalog.dense_real(), 1)


@given(square_tensors())
def test_radius_bounds(A):
    w, nrm = numerical_radius(A, 360), spectral_norm(A)
    assert nrm / 2 - 1e-6 <= w <= nrm + 1e-6
    rho = np.max(np.abs(eigenvalues(A).values))
    assert rho <= w / math.cos(math.pi / 360) + 1e-6


@given(square_tensors(), seeds)
def test_product_radius_bound(A, seed):
    B = random_tensor(np.random.default_rng(seed), A.row_shape)
    assert numerical_radius(A @ B, 360) <= 4 * numerical_radius(A, 360) * numerical_radius(B, 360) + 1e-6


@given(square_tensors(), seeds)
def test_affine_law(A, seed):
    rng = np.random.default_rng(seed)
    alpha, beta = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
    C = alpha * A + beta * identity(A.row_shape)
    for z in boundary(A, 120).points[::7]:
        assert membership_margin(C, alpha * z + beta, 120) <= 1e-6 * (1 + abs(alpha) + abs(beta)) * (1 + abs(z))


@given(square_tensors(), seeds)
def test_subadditivity(A, seed):
    B = random_tensor(np.random.default_rng(seed), A.row_shape)
    assert numerical_radius(A + B, 240) <= numerical_radius(A, 240) + numerical_radius(B, 240) + 1e-6


@given(square_tensors())
def test_real_and_imaginary_extremes(A):
    pts = boundary(A, 240).points
    top_re = np.linalg.eigvalsh(unfold(hermitian_part(A)))[-1]
    top_im = np.linalg.eigvalsh(unfold(-1j * skew_hermitian_part(A)))[-1]
    assert pts.real.max() == pytest.approx(top_re, abs=1e-8)
    assert pts.imag.max() == pytest.approx(top_im, abs=1e-8)


@given(square_tensors())
def test_transpose_and_adjoint_ranges(A):
    n = 120
    h = support_values(A, theta_grid(n))
    assert_allclose(support_values(A.T, theta_grid(n)), h, atol=1e-10)
    assert_allclose(support_values(A.H, theta_grid(n)), h[(-np.arange(n)) % n], atol=1e-10)


@given(seeds)
def test_isometry_compression(seed):
    rng = np.random.default_rng(seed)
    A = random_tensor(rng, (3, 2))
    B = random_isometry(rng, (3, 2), (2, 2))
    C = B.H @ A @ B
    for _ in range(5):
        z = rayleigh(C, random_unit(rng, (2, 2)))
        assert membership_margin(A, z, 180) <= 1e-6
    U = random_unitary(rng, (3, 2))
    assert_allclose(support_values(U.H @ A @ U, theta_grid(60)), support_values(A, theta_grid(60)), atol=1e-10)


@given(square_tensors(), seeds)
def test_convexity_interpolation(A, seed):
    rng = np.random.default_rng(seed)
    pts = boundary(A, 180).points
    for _ in range(3):
        z1 = pts[rng.integers(len(pts))]
        z2 = rayleigh(A, random_unit(rng, A.row_shape))
        for t in (0.25, 0.5, 0.75):
            assert contains_point(A, t * z1 + (1 - t) * z2, 180)


@given(seeds)
def test_classify_unitary(seed):
    rng = np.random.default_rng(seed)
    assert classify_unitary(random_unitary(rng, (2, 2)))
    assert not classify_unitary(random_tensor(rng, (2, 2)))
    assert not classify_unitary(2 * random_unitary(rng, (3,)))


def test_classify_unitary_singular():
    with pytest.raises(SingularTensorError):
        classify_unitary(catalog.ones_row())


def test_thread_count_and_chunking(monkeypatch):
    A = random_hermitian(np.random.default_rng(0), (2, 2))
    thetas = theta_grid(600)
    monkeypatch.setenv("NR_THREADS", "1")
    assert numrange.thread_count() == 1
    serial = support_values(A, thetas)
    monkeypatch.setenv("NR_THREADS", "3")
    assert numrange.thread_count() == 3
    assert np.array_equal(support_values(A, thetas), serial)
    monkeypatch.setenv("NR_THREADS", "zero")
    assert numrange.thread_count() >= 1


def test_convergence_failure_names_theta(monkeypatch):
    def broken(H, vectors=True, max_sweeps=None):
        raise ConvergenceError("stuck", stage="jacobi_eigh")

    monkeypatch.setattr(numrange.dense, "jacobi_eigh", broken)
    with pytest.raises(ConvergenceError) as info:
        boundary(catalog.dense_real(), 4)
    assert "theta=" in str(info.value)
    assert info.value.stage == "boundary"


@given(seeds, st.integers(0, 1))
def test_zero_membership_matches_pinv(seed, n_zero):
    from tensor_numrange.pinv import moore_penrose

    A, _ = random_normal(np.random.default_rng(seed), (2, 2), n_zero=n_zero)
    a, b = locate_point(A, 0, 360), locate_point(moore_penrose(A), 0, 360)
    if "boundary" not in (a, b):
        assert a == b


def test_singular_value_scaled_inverse_ranges():
    from tensor_numrange.numrange import ranges_intersect, separation_gap
    from tensor_numrange.pinv import moore_penrose
    from tensor_numrange.spectral import singular_values

    A = catalog.complex_diag()
    P = moore_penrose(A)
    meets = {round(a * a): ranges_intersect(A, a * a * P, 500) for a in singular_values(A)}
    assert meets == {37: False, 26: False, 16: True, 10: False, 2: False, 1: False}
    # at alpha = 4 the two ranges touch only at the point 4
    assert abs(separation_gap(A, 16 * P, 500)) < 1e-12
    assert contains_point(A, 4) and contains_point(16 * P, 4)


def test_separation_gap_needs_even_grid():
    from tensor_numrange.numrange import separation_gap

    with pytest.raises(ValueError):
        separation_gap(catalog.dense_real(), catalog.dense_real(), 9)
