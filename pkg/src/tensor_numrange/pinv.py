"""Moore-Penrose inverse of partitioned tensors and related structure tests."""
from __future__ import annotations

from dataclasses import astuple, dataclass
from typing import Sequence

import numpy as np

from . import dense
from .errors import ShapeError, TensorError
from .spectral import rank_tolerance
from .tensor import (
    STRUCTURE_TOL,
    Tensor,
    einstein_product,
    frobenius_norm,
    identity,
    inner_product,
    is_hermitian,
    outer_product,
    require_square,
)
from .unfold import fold, unfold


@dataclass(frozen=True)
class PenroseResiduals:
    """Frobenius norms of the four Penrose-equation defects."""

    r1: float
    r2: float
    r3: float
    r4: float

    def max(self) -> float:
        return max(astuple(self))

    def within(self, A: Tensor, X: Tensor, rtol: float = 1e-8) -> bool:
        bound = rtol * (1 + frobenius_norm(A)) * (1 + frobenius_norm(X))
        return self.max() <= bound


@dataclass(frozen=True)
class Structure:
    hermitian: bool
    normal: bool
    unitary: bool


def moore_penrose(A: Tensor) -> Tensor:
    """Moore-Penrose inverse through singular-value truncation.

    ``A`` may have any partition; the result swaps the row and column blocks.
    """
    U, s, V = dense.jacobi_svd(unfold(A))
    tol = rank_tolerance(A, s)
    inv = np.where(s > tol, 1.0 / np.where(s > tol, s, 1.0), 0.0)
    k = len(s)
    M = (V[:, :k] * inv) @ U[:, :k].conj().T
    return fold(M, A.col_shape, A.row_shape)


def penrose_residuals(A: Tensor, X: Tensor) -> PenroseResiduals:
    if X.row_shape != A.col_shape or X.col_shape != A.row_shape:
        raise ShapeError(
            f"candidate of shape {X.shape}/{X.row_modes} cannot invert {A.shape}/{A.row_modes}"
        )
    AX = einstein_product(A, X)
    XA = einstein_product(X, A)
    return PenroseResiduals(
        frobenius_norm(einstein_product(AX, A) - A),
        frobenius_norm(einstein_product(XA, X) - X),
        frobenius_norm(AX.H - AX),
        frobenius_norm(XA.H - XA),
    )


def is_ep(A: Tensor, tol: float = 1e-8) -> bool:
    """``A * A^+ == A^+ * A`` to ``tol * (1 + ||A||^2)``."""
    require_square(A)
    P = moore_penrose(A)
    defect = frobenius_norm(einstein_product(A, P) - einstein_product(P, A))
    return defect <= tol * (1 + frobenius_norm(A) ** 2)


def classify_structure(A: Tensor, tol: float = STRUCTURE_TOL) -> Structure:
    require_square(A)
    nrm = frobenius_norm(A)
    AH = A.H
    comm = frobenius_norm(einstein_product(A, AH) - einstein_product(AH, A))
    unit = frobenius_norm(einstein_product(AH, A) - identity(A.row_shape))
    return Structure(
        hermitian=is_hermitian(A, tol),
        normal=comm <= tol * max(nrm * nrm, 1.0),
        unitary=unit <= tol * max(frobenius_norm(identity(A.row_shape)), 1.0),
    )


def _check_orthonormal(tensors: Sequence[Tensor], tol: float) -> None:
    r = len(tensors)
    G = np.array([[inner_product(tensors[j], tensors[i]) for j in range(r)] for i in range(r)])
    if np.max(np.abs(G - np.eye(r)), initial=0.0) > tol:
        raise TensorError("input tensors are not orthonormal")


def orthonormal_sum(U_list: Sequence[Tensor], V_list: Sequence[Tensor], tol: float = 1e-10):
    """``A = sum U_i * V_i^H`` and its Moore-Penrose inverse ``sum V_i * U_i^H``."""
    if len(U_list) != len(V_list) or not U_list:
        raise ShapeError("need two nonempty lists of equal length")
    shape = U_list[0].shape
    if any(T.shape != shape for T in list(U_list) + list(V_list)):
        raise ShapeError("all tensors must share one shape")
    _check_orthonormal(U_list, tol)
    _check_orthonormal(V_list, tol)
    A = outer_product(U_list[0], V_list[0])
    Ap = outer_product(V_list[0], U_list[0])
    for U, V in zip(U_list[1:], V_list[1:]):
        A = A + outer_product(U, V)
        Ap = Ap + outer_product(V, U)
    return A, Ap
