"""Executable invariant battery over a given tensor and seeded random instances.

Every check returns an *excess*: how far the checked quantity exceeds its
allowed bound.  A check passes when the excess is ``<= 0``; boolean checks
return ``-1.0`` (pass) or ``1.0`` (fail).  Each check draws its auxiliary
randomness from its own stream keyed by ``(seed, check, instance)``, so
results do not depend on which other checks run.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Optional

import numpy as np

from . import catalog
from . import generators as gen
from .errors import SingularTensorError
from .numrange import boundary, membership_margin, numerical_radius, rayleigh, support_values, theta_grid
from .pinv import classify_structure, is_ep, moore_penrose, orthonormal_sum, penrose_residuals
from .spectral import (
    determinant,
    eigenvalues,
    hermitian_eigensystem,
    polar_decompose,
    rank,
    residual,
    same_multiset,
    spectral_norm,
    spectral_radius,
    svd,
)
from .tensor import (
    Tensor,
    einstein_product,
    frobenius_norm,
    hermitian_part,
    identity,
    inner_product,
    skew_hermitian_part,
)
from .numrange import classify_unitary, locate_point
from .unfold import unfold

PASS, FAIL = -1.0, 1.0


@dataclass
class BatteryConfig:
    seed: int = 0
    instances: int = 100
    n_theta: int = 360
    shapes: tuple = ((2, 2), (3, 2), (4,), (2, 1, 2))
    slack: float = 1e-6
    n_unitary: int = 20


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    worst: float = -math.inf
    inconclusive: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, excess: Optional[float], label):
        if excess is None:
            self.inconclusive += 1
            return
        self.checked += 1
        self.worst = max(self.worst, float(excess))
        if not excess <= 0:
            self.failures.append(label)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" inconclusive={self.inconclusive}" if self.inconclusive else ""
        fails = f" failing={self.failures[:5]}" if self.failures else ""
        return f"{status} {self.name} (n={self.checked}{extra}, worst excess={self.worst:.3e}){fails}"


class Probe:
    """Lazily cached quantities of one square tensor."""

    def __init__(self, A: Tensor, n_theta: int):
        self.A = A
        self.n_theta = n_theta

    @cached_property
    def thetas(self):
        return theta_grid(self.n_theta)

    @cached_property
    def supports(self):
        return support_values(self.A, self.thetas)

    @cached_property
    def w(self):
        return float(self.supports.max())

    @cached_property
    def fro(self):
        return frobenius_norm(self.A)

    @cached_property
    def norm(self):
        return spectral_norm(self.A)

    @cached_property
    def spectrum(self):
        return eigenvalues(self.A, want_vectors=True)

    @cached_property
    def boundary(self):
        return boundary(self.A, self.n_theta)

    @cached_property
    def pinv(self):
        return moore_penrose(self.A)

    @cached_property
    def invertible(self):
        return rank(self.A) == self.A.array.size ** 0.5

    def margin(self, z):
        return membership_margin(self.A, z, self.n_theta, supports=self.supports)


def grid_factor(n_theta):
    """Upper bound on ``true w / sampled w`` for a uniform grid of n angles."""
    return 1.0 / math.cos(math.pi / n_theta)


def brute_force_einstein(A: Tensor, B: Tensor, n: int) -> np.ndarray:
    """Direct summation over every multi-index (the independent oracle)."""
    lead = A.shape[: A.ndim - n]
    mid = A.shape[A.ndim - n :]
    trail = B.shape[n:]
    out = np.zeros(lead + trail, dtype=np.complex128)
    for i in product(*map(range, lead)):
        for j in product(*map(range, trail)):
            s = 0j
            for k in product(*map(range, mid)):
                s += A.array[i + k] * B.array[k + j]
            out[i + j] = s
    return out


def _same_shape(rng, A):
    return gen.random_tensor(rng, A.row_shape)


# -- per-tensor checks -----------------------------------------------------

def chk_unfold_homomorphism(p, rng, cfg):
    A = p.A
    B = gen.random_tensor(rng, A.col_shape, (2,))
    C = einstein_product(A, B)
    tol = 1e-12 * max(1.0, p.fro * frobenius_norm(B))
    brute = np.max(np.abs(C.array - brute_force_einstein(A, B, A.ndim - A.row_modes)))
    hom = np.max(np.abs(unfold(C) - unfold(A) @ unfold(B)))
    return max(brute, hom) - tol


def chk_associativity(p, rng, cfg):
    B, C = _same_shape(rng, p.A), _same_shape(rng, p.A)
    left = einstein_product(einstein_product(p.A, B), C)
    right = einstein_product(p.A, einstein_product(B, C))
    scale = max(1.0, p.fro * frobenius_norm(B) * frobenius_norm(C))
    return frobenius_norm(left - right) - 1e-12 * scale


def chk_adjoint(p, rng, cfg):
    X, Y = gen.random_unit(rng, p.A.row_shape), gen.random_unit(rng, p.A.row_shape)
    lhs = inner_product(einstein_product(p.A, X), Y)
    rhs = inner_product(X, einstein_product(p.A.H, Y))
    return abs(lhs - rhs) - 1e-12 * max(1.0, p.fro)


def chk_hermitian_split(p, rng, cfg):
    H, S = hermitian_part(p.A), skew_hermitian_part(p.A)
    X = gen.random_unit(rng, p.A.row_shape)
    split = frobenius_norm(H + S - p.A)
    quad = abs(rayleigh(p.A, X).real - rayleigh(H, X))
    return max(split - 1e-15 * max(1.0, p.fro), quad - 1e-12 * max(1.0, p.fro))


def chk_eigen_residuals(p, rng, cfg):
    spec = p.spectrum
    worst = max(residual(p.A, lam, X) for lam, X in zip(spec.values, spec.eigentensors))
    return worst - 1e-8 * max(p.fro, 1e-300)


def chk_det_eigen_product(p, rng, cfg):
    det = determinant(p.A)
    prod = complex(np.prod(p.spectrum.values))
    n = len(p.spectrum.values)
    tol = 1e-8 * max(abs(det), abs(prod)) + 1e-14 * p.norm**n
    return abs(det - prod) - tol


def chk_det_homomorphism(p, rng, cfg):
    B = _same_shape(rng, p.A)
    n = len(p.spectrum.values)
    lhs = determinant(einstein_product(p.A, B))
    rhs = determinant(p.A) * determinant(B)
    tol = 1e-8 * max(abs(lhs), abs(rhs)) + 1e-14 * (p.norm * spectral_norm(B)) ** n
    return abs(lhs - rhs) - tol


def chk_svd(p, rng, cfg):
    f = svd(p.A)
    I = identity(p.A.row_shape)
    rec = frobenius_norm(p.A - f.reconstruct()) - 1e-10 * max(p.fro, 1e-300)
    left = frobenius_norm(einstein_product(f.left.H, f.left) - I) - 1e-10
    right = frobenius_norm(einstein_product(f.right.H, f.right) - I) - 1e-10
    s2 = p.norm**2
    rho = spectral_radius(einstein_product(p.A.H, p.A))
    sq = abs(s2 - rho) - 1e-8 * max(s2, 1e-300)
    return max(rec, left, right, sq)


def chk_normal_singular_values(p, rng, cfg):
    if not classify_structure(p.A).normal:
        return PASS
    s = np.sort(svd(p.A).singular_values)
    m = np.sort(np.abs(p.spectrum.values))
    return float(np.max(np.abs(s - m))) - 1e-8 * max(1.0, p.norm)


def chk_hermitian_solvers(p, rng, cfg):
    H = hermitian_part(p.A)
    a = hermitian_eigensystem(H).values
    b = eigenvalues(H).values
    return PASS if same_multiset(a, b, 1e-8 * max(1.0, p.fro)) else FAIL


def chk_spectrum_in_range(p, rng, cfg):
    return max(p.margin(lam) for lam in p.spectrum.values) - cfg.slack


def chk_radius_bounds(p, rng, cfg):
    return max(0.5 * p.norm - cfg.slack - p.w, p.w - p.norm - cfg.slack)


def chk_spectral_radius(p, rng, cfg):
    rho = float(np.max(np.abs(p.spectrum.values)))
    return rho - p.w * grid_factor(p.n_theta) - cfg.slack


def chk_product_radius(p, rng, cfg):
    B = _same_shape(rng, p.A)
    wab = numerical_radius(einstein_product(p.A, B), p.n_theta)
    wb = numerical_radius(B, p.n_theta)
    return wab - 4 * p.w * wb - cfg.slack


def chk_affine_law(p, rng, cfg):
    alpha = complex(*rng.standard_normal(2))
    beta = complex(*rng.standard_normal(2))
    if abs(alpha) < 1e-3:
        alpha = 1.0
    C = alpha * p.A + beta * identity(p.A.row_shape)
    q = Probe(C, p.n_theta)
    fwd = max(q.margin(alpha * z + beta) for z in p.boundary.points)
    back = max(p.margin((z - beta) / alpha) for z in q.boundary.points)
    return max(fwd, back) - cfg.slack


def chk_subadditivity(p, rng, cfg):
    B = _same_shape(rng, p.A)
    S = p.A + B
    radius = numerical_radius(S, p.n_theta) - p.w - numerical_radius(B, p.n_theta) - cfg.slack
    X = gen.random_unit(rng, p.A.row_shape)
    lin = abs(rayleigh(S, X) - rayleigh(p.A, X) - rayleigh(B, X))
    return max(radius, lin - 1e-12 * max(1.0, p.fro + frobenius_norm(B)))


def chk_re_im_parts(p, rng, cfg):
    pts = p.boundary.points
    tol = 1e-8 * max(1.0, p.fro)
    top_re = hermitian_eigensystem(hermitian_part(p.A)).values[0]
    top_im = hermitian_eigensystem(-1j * skew_hermitian_part(p.A)).values[0]
    return max(abs(pts.real.max() - top_re), abs(pts.imag.max() - top_im)) - tol


def chk_transpose_laws(p, rng, cfg):
    tol = 1e-8 * max(1.0, p.fro)
    hT = support_values(p.A.T, p.thetas)
    hH = support_values(p.A.H, p.thetas)
    mirrored = p.supports[(-np.arange(p.n_theta)) % p.n_theta]
    return max(np.max(np.abs(hT - p.supports)), np.max(np.abs(hH - mirrored))) - tol


def chk_isometry_compression(p, rng, cfg):
    I = p.A.row_shape
    if I[0] > 1:
        J = (I[0] - 1,) + I[1:]
    elif len(I) > 1 and I[-1] > 1:
        J = I[:-1] + (I[-1] - 1,)
    else:
        J = I
    B = gen.random_isometry(rng, I, J)
    C = einstein_product(einstein_product(B.H, p.A), B)
    inside = max(p.margin(rayleigh(C, gen.random_unit(rng, J))) for _ in range(5)) - cfg.slack
    U = gen.random_unitary(rng, I)
    hU = support_values(einstein_product(einstein_product(U.H, p.A), U), p.thetas)
    equal = np.max(np.abs(hU - p.supports)) - 1e-8 * max(1.0, p.fro)
    return max(inside, equal)


def chk_convexity(p, rng, cfg):
    pts = p.boundary.points
    worst = -math.inf
    for _ in range(5):
        z1 = pts[rng.integers(len(pts))]
        z2 = rayleigh(p.A, gen.random_unit(rng, p.A.row_shape))
        for t in (0.25, 0.5, 0.75):
            worst = max(worst, p.margin(t * z1 + (1 - t) * z2))
    return worst - cfg.slack


def chk_boundary_certificate(p, rng, cfg):
    b = p.boundary
    on_line = np.max(np.abs((np.exp(1j * b.thetas) * b.points).real - b.supports))
    return max(b.convexity_violation() - cfg.slack, on_line - 1e-8 * (1 + b.source_norm))


def chk_cauchy_schwarz(p, rng, cfg):
    X = gen.random_tensor(rng, p.A.row_shape, ())
    Y = gen.random_tensor(rng, p.A.row_shape, ())
    return abs(inner_product(X, Y)) - frobenius_norm(X) * frobenius_norm(Y) - 1e-12


def chk_penrose(p, rng, cfg):
    r = penrose_residuals(p.A, p.pinv)
    return r.max() - 1e-8 * (1 + p.fro) * (1 + frobenius_norm(p.pinv))


def chk_pinv_involution(p, rng, cfg):
    return frobenius_norm(moore_penrose(p.pinv) - p.A) - 1e-8 * (1 + p.fro)


def chk_pinv_structure(p, rng, cfg):
    a, b = classify_structure(p.A), classify_structure(p.pinv)
    return PASS if (a.normal, a.hermitian) == (b.normal, b.hermitian) else FAIL


def chk_zero_eigen(p, rng, cfg):
    n = p.A.array.size ** 0.5
    return PASS if (rank(p.A) < n) == (rank(p.pinv) < n) else FAIL


def chk_zero_membership(p, rng, cfg):
    a = locate_point(p.A, 0j, p.n_theta)
    b = locate_point(p.pinv, 0j, p.n_theta)
    if "boundary" in (a, b):
        return None
    return PASS if a == b else FAIL


def chk_ep_containment(p, rng, cfg):
    if not is_ep(p.A):
        return PASS
    q = Probe(p.pinv, p.n_theta)
    worst = -math.inf
    for lam in p.spectrum.values:
        worst = max(worst, p.margin(lam) - cfg.slack * (1 + p.fro))
        if abs(lam) > 1e-8 * max(1.0, p.norm):
            worst = max(worst, q.margin(1 / lam) - cfg.slack * (1 + q.fro))
    return worst


def chk_norm_pinv_inequality(p, rng, cfg):
    if p.fro == 0:
        return PASS
    q = Probe(p.pinv, p.n_theta)
    prod = p.norm * q.norm
    upper = 4 * p.w * q.w * grid_factor(p.n_theta) ** 2
    return max(1 - prod - 1e-10, prod - upper - cfg.slack)


def chk_unitary_agreement(p, rng, cfg):
    if not p.invertible:
        return PASS
    return PASS if classify_unitary(p.A, p.n_theta) == classify_structure(p.A).unitary else FAIL


def chk_polar(p, rng, cfg):
    if not p.invertible:
        return PASS
    U, P = polar_decompose(p.A)
    I = identity(p.A.row_shape)
    rec = frobenius_norm(p.A - einstein_product(U, P)) - 1e-10 * p.fro
    uni = frobenius_norm(einstein_product(U.H, U) - I) - 1e-10
    ev = np.sort(hermitian_eigensystem(P).values)
    sv = np.sort(svd(p.A).singular_values)
    return max(rec, uni, float(np.max(np.abs(ev - sv))) - 1e-10 * max(1.0, p.norm))


PER_TENSOR: list = [
    ("unfold homomorphism vs brute-force summation", chk_unfold_homomorphism),
    ("Einstein product associativity", chk_associativity),
    ("conjugate transpose is the adjoint", chk_adjoint),
    ("Hermitian/skew-Hermitian split", chk_hermitian_split),
    ("eigenpair residuals", chk_eigen_residuals),
    ("det equals product of eigenvalues", chk_det_eigen_product),
    ("det is multiplicative", chk_det_homomorphism),
    ("SVD factors and norm identity", chk_svd),
    ("normal: singular values = |eigenvalues|", chk_normal_singular_values),
    ("Hermitian vs general eigensolver", chk_hermitian_solvers),
    ("spectrum contained in W(A)", chk_spectrum_in_range),
    ("radius bounds ||A||/2 <= w(A) <= ||A||", chk_radius_bounds),
    ("spectral radius <= w(A)", chk_spectral_radius),
    ("w(A*B) <= 4 w(A) w(B)", chk_product_radius),
    ("affine law W(aA+bI) = aW(A)+b", chk_affine_law),
    ("subadditivity", chk_subadditivity),
    ("real/imaginary part extremes", chk_re_im_parts),
    ("transpose laws", chk_transpose_laws),
    ("isometry compression", chk_isometry_compression),
    ("convexity interpolation", chk_convexity),
    ("boundary convexity certificate", chk_boundary_certificate),
    ("Cauchy-Schwarz", chk_cauchy_schwarz),
    ("Penrose residuals", chk_penrose),
    ("(A+)+ = A", chk_pinv_involution),
    ("normal/Hermitian preserved by A+", chk_pinv_structure),
    ("0 in spec(A) iff 0 in spec(A+)", chk_zero_eigen),
    ("0 in W(A) iff 0 in W(A+)", chk_zero_membership),
    ("EP: spec(A) in W(A) and 1/W(A+)", chk_ep_containment),
    ("1 <= ||A|| ||A+|| <= 4 w(A) w(A+)", chk_norm_pinv_inequality),
    ("unitarity via numerical radius", chk_unitary_agreement),
    ("polar decomposition", chk_polar),
]


# -- checks needing their own inputs -------------------------------------

def _reciprocal_gap(A, lam_values):
    """Worst distance of 1/lam (lam != 0) from the spectrum of A+, relative."""
    mu = eigenvalues(moore_penrose(A)).values
    worst = -math.inf
    for lam in lam_values:
        if abs(lam) > 1e-8:
            r = 1 / lam
            worst = max(worst, np.min(np.abs(mu - r)) / max(1.0, abs(r)))
    return worst


def random_normal_reciprocal(rng, cfg, i):
    shape = cfg.shapes[i % len(cfg.shapes)]
    A, lam = gen.random_normal(rng, shape, n_zero=i % 2)
    return _reciprocal_gap(A, lam) - 1e-8


def counterexample_reciprocal(rng, cfg, i):
    # the non-normal rank-one tensor must break the law: 1 in spec(A), 1 not in spec(A+)
    A = catalog.ones_row()
    has_one = np.min(np.abs(eigenvalues(A).values - 1)) < 1e-10
    gap = _reciprocal_gap(A, [1.0])
    return PASS if has_one and gap > 0.5 else FAIL


def random_unitary_agreement(rng, cfg, i):
    shape = cfg.shapes[i % len(cfg.shapes)]
    if i % 2 == 0:
        A = gen.random_unitary(rng, shape)
    else:
        A = gen.random_tensor(rng, shape)
    try:
        got = classify_unitary(A, cfg.n_theta)
    except SingularTensorError:
        return FAIL
    return PASS if got == classify_structure(A).unitary == (i % 2 == 0) else FAIL


def random_orthonormal_sum(rng, cfg, i):
    shape = cfg.shapes[i % len(cfg.shapes)]
    U = gen.random_orthonormal(rng, shape, 2)
    V = gen.random_orthonormal(rng, shape, 2)
    A, Ap = orthonormal_sum(U, V)
    mp = frobenius_norm(Ap - moore_penrose(A)) - 1e-8
    thetas = theta_grid(64)
    agree = np.max(np.abs(support_values(Ap, thetas) - support_values(A.H, thetas))) - 1e-6
    return max(mp, agree)


def random_low_rank_pinv(rng, cfg, i):
    shape = cfg.shapes[i % len(cfg.shapes)]
    n = math.prod(shape)
    A = gen.random_low_rank(rng, shape, max(1, n // 2))
    p = Probe(A, cfg.n_theta)
    zero = chk_zero_eigen(p, rng, cfg)
    return max(chk_penrose(p, rng, cfg), chk_pinv_involution(p, rng, cfg), zero)


def random_rectangular_pinv(rng, cfg, i):
    A = gen.random_tensor(rng, (2, 3), (2, 2) if i % 2 else (5,))
    X = moore_penrose(A)
    r = penrose_residuals(A, X)
    return r.max() - 1e-8 * (1 + frobenius_norm(A)) * (1 + frobenius_norm(X))


SPECIAL: list = [
    ("normal tensors: 1/lam in spec(A+)", random_normal_reciprocal, None),
    ("non-normal counterexample violates 1/lam law", counterexample_reciprocal, 1),
    ("classify_unitary agrees with structure (unitary / non-unitary)", random_unitary_agreement, "unitary"),
    ("orthonormal-sum inverse and W(A+) = W(A^H)", random_orthonormal_sum, None),
    ("rank-deficient Penrose residuals and involution", random_low_rank_pinv, None),
    ("non-square Penrose residuals", random_rectangular_pinv, None),
]


def _stream(cfg, *key):
    return np.random.default_rng([cfg.seed, *key])


def random_instance(rng, shape, i):
    """Mostly generic tensors, every fifth rank-deficient and every fifth normal singular."""
    if i % 5 == 3:
        return gen.random_low_rank(rng, shape, max(1, math.prod(shape) // 2))
    if i % 5 == 4:
        return gen.random_normal(rng, shape, n_zero=1)[0]
    return gen.random_tensor(rng, shape)


def check_tensor(A: Tensor, cfg: BatteryConfig, results=None, instance=0):
    """Run every per-tensor check on ``A``; accumulate into ``results``."""
    if results is None:
        results = {name: PropertyResult(name) for name, _ in PER_TENSOR}
    p = Probe(A, cfg.n_theta)
    for k, (name, fn) in enumerate(PER_TENSOR):
        results[name].record(fn(p, _stream(cfg, 1, k, instance), cfg), instance)
    return results


def run_battery(cfg: BatteryConfig, tensor: Optional[Tensor] = None,
                emit: Optional[Callable[[str], None]] = None) -> list:
    """Full battery; returns a list of :class:`PropertyResult` and emits one line each."""
    emit = emit or (lambda s: None)
    out = []
    if tensor is not None:
        res = check_tensor(tensor, cfg)
        for name, _ in PER_TENSOR:
            r = res[name]
            r.name = f"[input] {name}"
            emit(r.line())
            out.append(r)
    res = {name: PropertyResult(f"[random] {name}") for name, _ in PER_TENSOR}
    for i in range(cfg.instances):
        shape = cfg.shapes[i % len(cfg.shapes)]
        A = random_instance(_stream(cfg, 0, i), shape, i)
        check_tensor(A, cfg, res, instance=i)
    for name, _ in PER_TENSOR:
        emit(res[name].line())
        out.append(res[name])
    for k, (name, fn, count) in enumerate(SPECIAL):
        if count == "unitary":
            count = 2 * cfg.n_unitary
        elif count is None:
            count = cfg.instances
        r = PropertyResult(f"[random] {name}")
        for i in range(count):
            r.record(fn(_stream(cfg, 2, k, i), cfg, i), i)
        emit(r.line())
        out.append(r)
    return out
