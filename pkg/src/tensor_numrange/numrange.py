"""Numerical range W(A) and numerical radius w(A) of even-order square tensors.

The convex set ``W(A) = {<A * X, X> : ||X|| = 1}`` is described through its
support function ``h(theta) = lambda_max(H(e^{i theta} A))``: a point z lies in
W(A) iff ``Re(e^{i theta} z) <= h(theta)`` for every angle, and the unit
eigentensor attaining ``h(theta)`` yields a boundary point.  All routines
sample a uniform angle grid ``theta_k = 2 pi k / n``.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import dense
from .errors import ConvergenceError, ShapeError, TensorError
from .spectral import inverse
from .tensor import Tensor, einstein_product, frobenius_norm, inner_product, require_square
from .unfold import fold, unfold

DEFAULT_N_THETA = 500
_MIN_PARALLEL = 256


@dataclass(frozen=True)
class BoundarySample:
    theta: float
    support: float
    point: complex


@dataclass(frozen=True)
class Boundary:
    samples: tuple
    source_norm: float

    @property
    def thetas(self) -> np.ndarray:
        return np.array([s.theta for s in self.samples])

    @property
    def supports(self) -> np.ndarray:
        return np.array([s.support for s in self.samples])

    @property
    def points(self) -> np.ndarray:
        return np.array([s.point for s in self.samples], dtype=np.complex128)

    def __len__(self):
        return len(self.samples)

    def convexity_violation(self) -> float:
        """Largest excess of any sample over any other sample's supporting half-plane."""
        z = self.points
        rot = np.exp(1j * self.thetas)
        excess = (rot[:, None] * z[None, :]).real - self.supports[:, None]
        return float(excess.max())

    def is_certified(self, slack: float = 1e-6) -> bool:
        return self.convexity_violation() <= slack


def theta_grid(n_theta: int) -> np.ndarray:
    if n_theta < 3:
        raise ValueError(f"need at least 3 angles, got {n_theta}")
    # k/n first so nested grids share bit-identical angles
    return 2 * np.pi * (np.arange(n_theta) / n_theta)


def thread_count() -> int:
    env = os.environ.get("NR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def _rotated_hermitian(M: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    T = np.exp(1j * thetas)[:, None, None] * M[None]
    return (T + np.conj(np.swapaxes(T, 1, 2))) / 2


def _solve_chunk(M, thetas, vectors):
    try:
        return dense.jacobi_eigh(_rotated_hermitian(M, thetas), vectors=vectors)
    except ConvergenceError:
        # re-run one angle at a time to name the offending one
        for t in thetas:
            try:
                dense.jacobi_eigh(_rotated_hermitian(M, np.array([t])), vectors=False)
            except ConvergenceError as exc:
                raise ConvergenceError(f"{exc} at theta={t!r}", stage="boundary") from exc
        raise


def _max_eigenpairs(M: np.ndarray, thetas: np.ndarray, vectors: bool):
    """Largest eigenvalue (and eigenvector) of ``H(e^{i theta} M)`` per angle."""
    workers = thread_count()
    if workers == 1 or len(thetas) < _MIN_PARALLEL:
        chunks = [thetas]
    else:
        chunks = np.array_split(thetas, workers)
    if len(chunks) == 1:
        results = [_solve_chunk(M, thetas, vectors)]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(lambda c: _solve_chunk(M, c, vectors), chunks))
    lam = np.concatenate([w[:, 0] for w, _ in results])
    vecs = np.concatenate([V[:, :, 0] for _, V in results]) if vectors else None
    return lam, vecs


def rayleigh(A: Tensor, X: Tensor) -> complex:
    """``<A * X, X> / ||X||^2``."""
    require_square(A)
    if X.shape != A.row_shape:
        raise ShapeError(f"tensor of shape {X.shape} does not conform to {A.shape}")
    nx = frobenius_norm(X)
    if nx == 0.0:
        raise TensorError("Rayleigh quotient of the zero tensor")
    return inner_product(einstein_product(A, X), X) / nx**2


def support_values(A: Tensor, thetas: Sequence[float]) -> np.ndarray:
    """``lambda_max(H(e^{i theta} A))`` for each angle."""
    require_square(A)
    lam, _ = _max_eigenpairs(unfold(A), np.asarray(thetas, dtype=float), vectors=False)
    return lam


def support_function(A: Tensor, theta: float):
    """Support value at ``theta`` and a unit maximizing eigentensor."""
    require_square(A)
    lam, vecs = _max_eigenpairs(unfold(A), np.array([float(theta)]), vectors=True)
    return float(lam[0]), fold(vecs[0], A.row_shape)


def boundary(A: Tensor, n_theta: int = DEFAULT_N_THETA) -> Boundary:
    """Trace boundary points of W(A) on a uniform grid of ``n_theta`` angles."""
    require_square(A)
    thetas = theta_grid(n_theta)
    M = unfold(A)
    lam, vecs = _max_eigenpairs(M, thetas, vectors=True)
    # z_k = x_k^H M x_k for every angle at once
    z = np.einsum("ki,ij,kj->k", vecs.conj(), M, vecs)
    samples = tuple(
        BoundarySample(float(t), float(h), complex(p)) for t, h, p in zip(thetas, lam, z)
    )
    return Boundary(samples, frobenius_norm(A))


def numerical_radius(A: Tensor, n_theta: int = DEFAULT_N_THETA) -> float:
    """``max_theta lambda_max(H(e^{i theta} A))`` over the angle grid."""
    return float(np.max(support_values(A, theta_grid(n_theta))))


def _default_tol(A: Tensor) -> float:
    return 1e-6 * (1 + frobenius_norm(A))


def membership_margin(A: Tensor, z: complex, n_theta: int = DEFAULT_N_THETA,
                      supports: Optional[np.ndarray] = None) -> float:
    """``max_theta Re(e^{i theta} z) - h(theta)``; nonpositive inside W(A)."""
    thetas = theta_grid(n_theta)
    if supports is None:
        supports = support_values(A, thetas)
    return float(np.max((np.exp(1j * thetas) * complex(z)).real - supports))


def contains_point(A: Tensor, z: complex, n_theta: int = DEFAULT_N_THETA,
                   tol: Optional[float] = None) -> bool:
    """Sampled certificate that ``z`` lies in W(A)."""
    if tol is None:
        tol = _default_tol(A)
    return membership_margin(A, z, n_theta) <= tol


def locate_point(A: Tensor, z: complex, n_theta: int = DEFAULT_N_THETA,
                 tol: Optional[float] = None) -> str:
    """``"inside"``, ``"outside"`` or ``"boundary"`` (within ``tol`` of the edge)."""
    if tol is None:
        tol = _default_tol(A)
    margin = membership_margin(A, z, n_theta)
    if margin > tol:
        return "outside"
    if margin < -tol:
        return "inside"
    return "boundary"


def classify_unitary(A: Tensor, n_theta: int = DEFAULT_N_THETA, tol: float = 1e-6) -> bool:
    """Unitarity test through ``w(A) <= 1`` and ``w(A^-1) <= 1``.

    Raises :class:`SingularTensorError` for singular input.
    """
    Ainv = inverse(A)
    return (numerical_radius(A, n_theta) <= 1 + tol
            and numerical_radius(Ainv, n_theta) <= 1 + tol)


def separation_gap(A: Tensor, B: Tensor, n_theta: int = DEFAULT_N_THETA) -> float:
    """``max_theta -(h_A(theta) + h_B(theta + pi))`` on an even grid.

    Positive values certify a separating line, so W(A) and W(B) are disjoint;
    nonpositive values mean no sampled direction separates them.
    """
    if n_theta % 2:
        raise ValueError("separation needs an even number of angles")
    thetas = theta_grid(n_theta)
    hA = support_values(A, thetas)
    hB = support_values(B, thetas)
    opposite = np.roll(hB, -(n_theta // 2))
    return float(np.max(-(hA + opposite)))


def ranges_intersect(A: Tensor, B: Tensor, n_theta: int = DEFAULT_N_THETA,
                     tol: Optional[float] = None) -> bool:
    if tol is None:
        tol = _default_tol(A) + _default_tol(B)
    return separation_gap(A, B, n_theta) <= tol
