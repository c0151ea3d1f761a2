"""Eigenvalues, SVD, determinant, inverse and polar decomposition of tensors.

All routines go through the unfolding: eigenpairs of ``A`` under the
Einstein product are exactly eigenpairs of ``unfold(A)`` folded back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import dense
from .errors import NotHermitianError, SingularTensorError
from .tensor import (
    STRUCTURE_TOL,
    Tensor,
    einstein_product,
    frobenius_norm,
    is_hermitian,
    require_square,
)
from .unfold import fold, unfold


@dataclass(frozen=True)
class Spectrum:
    values: np.ndarray
    eigentensors: Optional[tuple] = None

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class SvdFactors:
    left: Tensor
    singular_values: np.ndarray
    right: Tensor

    def reconstruct(self) -> Tensor:
        U, V = unfold(self.left), unfold(self.right)
        k = len(self.singular_values)
        M = (U[:, :k] * self.singular_values) @ V[:, :k].conj().T
        return fold(M, self.left.row_shape, self.right.row_shape)


def eigenvalues(A: Tensor, want_vectors: bool = False) -> Spectrum:
    """Eigenvalues of an even-order square tensor, optionally with unit eigentensors."""
    require_square(A)
    w, X = dense.eig(unfold(A), vectors=want_vectors)
    tensors = None
    if want_vectors:
        tensors = tuple(fold(X[:, k], A.row_shape) for k in range(X.shape[1]))
    return Spectrum(w, tensors)


def hermitian_eigensystem(A: Tensor, tol: float = STRUCTURE_TOL) -> Spectrum:
    """Real eigenvalues (nonincreasing) and orthonormal eigentensors of a Hermitian tensor."""
    require_square(A)
    if not is_hermitian(A, tol):
        raise NotHermitianError("hermitian_eigensystem needs a Hermitian tensor")
    M = unfold(A)
    w, V = dense.jacobi_eigh((M + M.conj().T) / 2)
    return Spectrum(w, tuple(fold(V[:, k], A.row_shape) for k in range(V.shape[1])))


def spectral_radius(A: Tensor) -> float:
    return float(np.max(np.abs(eigenvalues(A).values)))


def determinant(A: Tensor) -> complex:
    require_square(A)
    return dense.lu_det(unfold(A))


def svd(A: Tensor) -> SvdFactors:
    U, s, V = dense.jacobi_svd(unfold(A))
    return SvdFactors(fold(U, A.row_shape, A.row_shape), s, fold(V, A.col_shape, A.col_shape))


def singular_values(A: Tensor) -> np.ndarray:
    return svd(A).singular_values


def spectral_norm(A: Tensor) -> float:
    """Operator norm ``sup ||A * X||`` over unit X (largest singular value)."""
    s = singular_values(A)
    return float(s[0]) if len(s) else 0.0


def rank_tolerance(A: Tensor, s: Optional[np.ndarray] = None) -> float:
    if s is None:
        s = singular_values(A)
    rows, cols = math.prod(A.row_shape), math.prod(A.col_shape)
    return dense.EPS * max(rows, cols) * (float(s[0]) if len(s) else 0.0)


def rank(A: Tensor) -> int:
    s = singular_values(A)
    return int(np.sum(s > rank_tolerance(A, s)))


def inverse(A: Tensor) -> Tensor:
    require_square(A)
    U, s, V = dense.jacobi_svd(unfold(A))
    if s[-1] <= rank_tolerance(A, s):
        raise SingularTensorError("tensor is singular to working precision", stage="inverse")
    return fold((V / s) @ U.conj().T, A.row_shape, A.row_shape)


def polar_decompose(A: Tensor) -> tuple:
    """``A = U * P`` with U unitary and ``P = (A^H * A)^(1/2)`` positive definite."""
    require_square(A)
    W, s, V = dense.jacobi_svd(unfold(A))
    if s[-1] <= rank_tolerance(A, s):
        raise SingularTensorError("polar decomposition needs an invertible tensor", stage="polar")
    U = W @ V.conj().T
    P = (V * s) @ V.conj().T
    P = (P + P.conj().T) / 2
    half = A.row_shape
    return fold(U, half, half), fold(P, half, half)


def residual(A: Tensor, lam: complex, X: Tensor) -> float:
    """``||A * X - lam X||``."""
    return frobenius_norm(einstein_product(A, X) - lam * X)


def same_multiset(a: Sequence[complex], b: Sequence[complex], tol: float) -> bool:
    """True when ``a`` and ``b`` match one-to-one within ``tol`` (optimal assignment)."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        return False
    if a.size == 0:
        return True
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return bool(cost[r, c].max() <= tol)


def sort_values(values: Sequence[complex]) -> np.ndarray:
    """Sort by (real, imag)."""
    return np.sort_complex(np.asarray(values, dtype=np.complex128))
