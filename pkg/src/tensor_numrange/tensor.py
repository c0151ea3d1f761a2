"""Dense complex tensors with a row/column mode partition and Einstein-product algebra.

A :class:`Tensor` is an immutable wrapper around a complex128 array plus the
number of leading modes that form its "row" block.  An even-order square
tensor of half-shape ``(I1, ..., IN)`` has shape ``(I1, ..., IN, I1, ..., IN)``
and ``row_modes == N``; an order-N tensor acting as a "vector" has
``row_modes == N`` and an empty column block.

Multi-indices in the public API are 1-based, flattening is row-major.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

from .errors import NotSquareError, ShapeError, TensorError

#: relative tolerance for structural predicates (Hermitian, zero, ...)
STRUCTURE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Tensor:
    """Immutable dense complex tensor.

    Parameters
    ----------
    array : array_like
        Entries; copied to a read-only complex128 array.
    row_modes : int
        Number of leading modes forming the row block.  Defaults to all
        modes, i.e. an order-N "vector" tensor.
    """

    array: np.ndarray
    row_modes: int = -1

    def __post_init__(self):
        arr = np.array(self.array, dtype=np.complex128, copy=True)
        if any(n <= 0 for n in arr.shape):
            raise ShapeError(f"mode extents must be positive, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise TensorError("tensor entries must be finite")
        row_modes = arr.ndim if self.row_modes == -1 else int(self.row_modes)
        if not 0 <= row_modes <= arr.ndim:
            raise ShapeError(f"row_modes={row_modes} outside [0, {arr.ndim}]")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)
        object.__setattr__(self, "row_modes", row_modes)

    # -- shape helpers ---------------------------------------------------
    @property
    def shape(self) -> tuple:
        return self.array.shape

    @property
    def ndim(self) -> int:
        return self.array.ndim

    @property
    def row_shape(self) -> tuple:
        return self.shape[: self.row_modes]

    @property
    def col_shape(self) -> tuple:
        return self.shape[self.row_modes :]

    @property
    def is_square(self) -> bool:
        return self.row_shape == self.col_shape and self.row_modes > 0

    @property
    def size(self) -> int:
        return self.array.size

    def at(self, *index: int) -> complex:
        """Entry at a 1-based multi-index."""
        if len(index) == 1 and isinstance(index[0], (tuple, list)):
            index = tuple(index[0])
        if len(index) != self.ndim:
            raise IndexError(f"expected {self.ndim} indices, got {len(index)}")
        for k, (i, n) in enumerate(zip(index, self.shape)):
            if not 1 <= i <= n:
                raise IndexError(f"index {i} out of range [1, {n}] in mode {k + 1}")
        return complex(self.array[tuple(i - 1 for i in index)])

    # -- operators -------------------------------------------------------
    @property
    def H(self) -> "Tensor":
        return conj_transpose(self)

    @property
    def T(self) -> "Tensor":
        return transpose(self)

    def conj(self) -> "Tensor":
        return Tensor(np.conj(self.array), self.row_modes)

    def __matmul__(self, other: "Tensor") -> "Tensor":
        return einstein_product(self, other)

    def __add__(self, other: "Tensor") -> "Tensor":
        return linear_combine(1.0, self, 1.0, other)

    def __sub__(self, other: "Tensor") -> "Tensor":
        return linear_combine(1.0, self, -1.0, other)

    def __neg__(self) -> "Tensor":
        return Tensor(-self.array, self.row_modes)

    def __mul__(self, alpha) -> "Tensor":
        if not isinstance(alpha, Number):
            return NotImplemented
        return Tensor(complex(alpha) * self.array, self.row_modes)

    __rmul__ = __mul__

    def __truediv__(self, alpha) -> "Tensor":
        if not isinstance(alpha, Number):
            return NotImplemented
        return Tensor(self.array / complex(alpha), self.row_modes)

    def equals(self, other: "Tensor") -> bool:
        """Exact equality of shape, partition and entries."""
        return (
            self.shape == other.shape
            and self.row_modes == other.row_modes
            and bool(np.array_equal(self.array, other.array))
        )

    def allclose(self, other: "Tensor", atol: float = 1e-12) -> bool:
        return self.shape == other.shape and bool(
            np.max(np.abs(self.array - other.array), initial=0.0) <= atol
        )

    def __repr__(self):
        return f"Tensor(shape={self.shape}, row_modes={self.row_modes})"


def build_tensor(shape: Sequence[int], row_modes: int, entries: Iterable) -> Tensor:
    """Build a tensor from a flat row-major sequence of entries."""
    shape = tuple(int(n) for n in shape)
    if any(n <= 0 for n in shape):
        raise ShapeError(f"mode extents must be positive, got {shape}")
    flat = np.asarray(list(entries), dtype=np.complex128)
    expected = math.prod(shape)
    if flat.ndim != 1 or flat.size != expected:
        raise ShapeError(f"expected {expected} entries for shape {shape}, got {flat.size}")
    return Tensor(flat.reshape(shape), row_modes)


def zeros(shape: Sequence[int], row_modes: int = -1) -> Tensor:
    return Tensor(np.zeros(tuple(shape), dtype=np.complex128), row_modes)


def identity(half_shape: Sequence[int]) -> Tensor:
    """Square identity tensor with ``I *_N X = X``."""
    half_shape = tuple(int(n) for n in half_shape)
    n = math.prod(half_shape)
    return Tensor(np.eye(n, dtype=np.complex128).reshape(half_shape + half_shape), len(half_shape))


def basis_tensor(shape: Sequence[int], index: Sequence[int]) -> Tensor:
    """Order-N tensor with a single 1 at the 1-based ``index``."""
    arr = np.zeros(tuple(shape), dtype=np.complex128)
    arr[tuple(i - 1 for i in index)] = 1.0
    return Tensor(arr)


def einstein_product(A: Tensor, B: Tensor, n: int | None = None) -> Tensor:
    """Contract the last ``n`` modes of ``A`` with the first ``n`` modes of ``B``.

    ``n`` defaults to the size of A's column block.  The result carries A's
    leading modes as its row block.
    """
    if n is None:
        n = A.ndim - A.row_modes
    if not 0 <= n <= min(A.ndim, B.ndim):
        raise ShapeError(f"cannot contract {n} modes of {A.shape} and {B.shape}")
    if A.shape[A.ndim - n :] != B.shape[:n]:
        raise ShapeError(
            f"contracted extents differ: {A.shape[A.ndim - n:]} vs {B.shape[:n]}"
        )
    out = np.tensordot(A.array, B.array, axes=n)
    return Tensor(out, A.ndim - n)


def pi_transpose(A: Tensor, pi: Sequence[int]) -> Tensor:
    """Reindex modes by a 1-based permutation.

    The entry at ``(i1, ..., iM)`` moves to ``(i_pi(1), ..., i_pi(M))`` and the
    result has extents ``(I_pi(1), ..., I_pi(M))``.  The partition is kept.
    """
    pi = tuple(int(p) for p in pi)
    if len(pi) != A.ndim:
        raise ShapeError(f"permutation of length {len(pi)} for a {A.ndim}-mode tensor")
    if sorted(pi) != list(range(1, A.ndim + 1)):
        raise ShapeError(f"{pi} is not a permutation of 1..{A.ndim}")
    return Tensor(np.transpose(A.array, [p - 1 for p in pi]), A.row_modes)


def transpose(A: Tensor) -> Tensor:
    """Swap the row and column blocks without conjugation."""
    m = A.row_modes
    axes = list(range(m, A.ndim)) + list(range(m))
    return Tensor(np.transpose(A.array, axes), A.ndim - m)


def conj_transpose(A: Tensor) -> Tensor:
    """Swap the row and column blocks and conjugate (the adjoint)."""
    m = A.row_modes
    axes = list(range(m, A.ndim)) + list(range(m))
    return Tensor(np.conj(np.transpose(A.array, axes)), A.ndim - m)


def inner_product(X: Tensor, Y: Tensor) -> complex:
    """``<X, Y> = sum conj(y) * x``, linear in X."""
    if X.shape != Y.shape:
        raise ShapeError(f"inner product of shapes {X.shape} and {Y.shape}")
    return complex(np.vdot(Y.array, X.array))


def frobenius_norm(X: Tensor) -> float:
    return float(np.linalg.norm(X.array.ravel()))


def linear_combine(alpha, A: Tensor, beta, B: Tensor) -> Tensor:
    """Entrywise ``alpha*A + beta*B``."""
    if A.shape != B.shape or A.row_modes != B.row_modes:
        raise ShapeError(
            f"cannot combine {A.shape}/{A.row_modes} with {B.shape}/{B.row_modes}"
        )
    return Tensor(complex(alpha) * A.array + complex(beta) * B.array, A.row_modes)


def require_square(A: Tensor) -> None:
    if not A.is_square:
        raise NotSquareError(
            f"expected an even-order square tensor, got rows {A.row_shape} / cols {A.col_shape}"
        )


def hermitian_part(A: Tensor) -> Tensor:
    require_square(A)
    return Tensor((A.array + conj_transpose(A).array) / 2, A.row_modes)


def skew_hermitian_part(A: Tensor) -> Tensor:
    require_square(A)
    return Tensor((A.array - conj_transpose(A).array) / 2, A.row_modes)


def is_hermitian(A: Tensor, tol: float = STRUCTURE_TOL) -> bool:
    if not A.is_square:
        return False
    defect = frobenius_norm(A - A.H)
    return defect <= tol * max(frobenius_norm(A), 1.0)


def outer_product(U: Tensor, V: Tensor) -> Tensor:
    """Rank-one square tensor ``U *_N V^H``."""
    if U.shape != V.shape:
        raise ShapeError(f"outer product of shapes {U.shape} and {V.shape}")
    return Tensor(np.multiply.outer(U.array, np.conj(V.array)), U.ndim)


def direct_sum(A: Tensor, B: Tensor, modes: str = "first") -> Tensor:
    """Block-diagonal sum of two square tensors of the same order.

    ``modes="first"`` concatenates along the first mode of each block, so the
    unfolding is exactly ``diag(unfold(A), unfold(B))``; this requires the
    remaining extents to agree.  ``modes="all"`` concatenates along every mode
    (extents ``I_k + K_k``), placing A in the leading corner and B in the
    trailing one; positions mixing the two ranges are zero.
    """
    require_square(A)
    require_square(B)
    N = A.row_modes
    if B.row_modes != N:
        raise ShapeError(f"direct sum of orders {2 * N} and {2 * B.row_modes}")
    I, K = A.row_shape, B.row_shape
    if modes == "first":
        if I[1:] != K[1:]:
            raise ShapeError(f"trailing extents differ: {I[1:]} vs {K[1:]}")
        half = (I[0] + K[0],) + I[1:]
        out = np.zeros(half + half, dtype=np.complex128)
        a_slc = (slice(0, I[0]),) + (slice(None),) * (N - 1)
        b_slc = (slice(I[0], None),) + (slice(None),) * (N - 1)
    elif modes == "all":
        half = tuple(i + k for i, k in zip(I, K))
        out = np.zeros(half + half, dtype=np.complex128)
        a_slc = tuple(slice(0, i) for i in I)
        b_slc = tuple(slice(i, None) for i in I)
    else:
        raise ValueError(f"unknown direct-sum mode {modes!r}")
    out[a_slc + a_slc] = A.array
    out[b_slc + b_slc] = B.array
    return Tensor(out, N)
