"""Row-major bijection between partitioned tensors and dense matrices.

``unfold`` maps the row block to matrix rows and the column block to matrix
columns.  Under this map the Einstein product becomes the matrix product,
which is what every spectral routine relies on.
"""
import math
from typing import Sequence

import numpy as np

from .errors import ShapeError
from .tensor import Tensor


def linear_index(idx: Sequence[int], shape: Sequence[int]) -> int:
    """Row-major 0-based rank of a 1-based multi-index."""
    if len(idx) != len(shape):
        raise IndexError(f"index of length {len(idx)} for shape {tuple(shape)}")
    rank = 0
    for k, (i, n) in enumerate(zip(idx, shape)):
        if not 1 <= i <= n:
            raise IndexError(f"index {i} out of range [1, {n}] in mode {k + 1}")
        rank = rank * n + (i - 1)
    return rank


def multi_index(rank: int, shape: Sequence[int]) -> tuple:
    """Inverse of :func:`linear_index`."""
    total = math.prod(shape)
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} out of range [0, {total})")
    out = []
    for n in reversed(shape):
        rank, r = divmod(rank, n)
        out.append(r + 1)
    return tuple(reversed(out))


def unfold(A: Tensor) -> np.ndarray:
    """Dense ``prod(row_shape) x prod(col_shape)`` matrix of ``A``.

    Order-N tensors (empty column block) become column vectors.
    """
    rows = math.prod(A.row_shape)
    cols = math.prod(A.col_shape)
    return A.array.reshape(rows, cols).copy()


def fold(M: np.ndarray, row_shape: Sequence[int], col_shape: Sequence[int] = ()) -> Tensor:
    """Inverse of :func:`unfold`."""
    M = np.asarray(M)
    row_shape, col_shape = tuple(row_shape), tuple(col_shape)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    if M.ndim != 2:
        raise ShapeError(f"expected a matrix, got ndim={M.ndim}")
    if M.shape != (math.prod(row_shape), math.prod(col_shape)):
        raise ShapeError(
            f"matrix {M.shape} does not fold to rows {row_shape} x cols {col_shape}"
        )
    return Tensor(M.reshape(row_shape + col_shape), len(row_shape))
