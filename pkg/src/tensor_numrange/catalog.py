"""Reference tensors with hand-checkable structure.

Fourth-order tensors are given as frontal slices ``A(:, :, k1, k2)`` keyed by
their 1-based trailing indices, so each table reads off directly.
"""
import numpy as np

from .tensor import Tensor

I = 1j


def from_slices(shape, slices, row_modes=None):
    """Assemble a tensor from frontal slices keyed by 1-based trailing indices."""
    arr = np.zeros(shape, dtype=np.complex128)
    lead = len(np.asarray(next(iter(slices.values()))).shape)
    for key, block in slices.items():
        key = (key,) if isinstance(key, int) else key
        arr[(slice(None),) * lead + tuple(k - 1 for k in key)] = block
    return Tensor(arr, len(shape) // 2 if row_modes is None else row_modes)


def contraction_pair():
    """Real 2x3x3 and 3x3x2 tensors admitting both a 1- and 2-mode product."""
    A = from_slices((2, 3, 3), {
        1: [[4, -5, 4], [1, 3, 1]],
        2: [[6, 3, 1], [2, 4, 7]],
        3: [[3, 2, 3], [2, 1, 3]],
    }, row_modes=1)
    B = from_slices((3, 3, 2), {
        1: [[1, 1, 4], [2, 4, 3], [2, 3, 1]],
        2: [[4, 3, 1], [-4, 0, 2], [0, 0, 1]],
    }, row_modes=2)
    return A, B


def diag_six():
    """3x2x3x2 real diagonal tensor, unfolding diag(2, 1, 3, -1, 8, 9)."""
    return from_slices((3, 2, 3, 2), {
        (1, 1): [[2, 0], [0, 0], [0, 0]],
        (1, 2): [[0, 1], [0, 0], [0, 0]],
        (2, 1): [[0, 0], [3, 0], [0, 0]],
        (2, 2): [[0, 0], [0, -1], [0, 0]],
        (3, 1): [[0, 0], [0, 0], [8, 0]],
        (3, 2): [[0, 0], [0, 0], [0, 9]],
    })


def ones_row():
    """Rank-one, non-normal 3x2x3x2 tensor: a(1, 1, k1, k2) = 1, all else 0."""
    row = [[1, 0], [0, 0], [0, 0]]
    return from_slices((3, 2, 3, 2), {(k1, k2): row for k1 in (1, 2, 3) for k2 in (1, 2)})


def complex_diag():
    """Complex diagonal 3x2x3x2 tensor with entries 1+i, 4, i, 5+i, 3+i, 6+i."""
    return from_slices((3, 2, 3, 2), {
        (1, 1): [[1 + I, 0], [0, 0], [0, 0]],
        (2, 1): [[0, 0], [I, 0], [0, 0]],
        (3, 1): [[0, 0], [0, 0], [3 + I, 0]],
        (1, 2): [[0, 4], [0, 0], [0, 0]],
        (2, 2): [[0, 0], [0, 5 + I], [0, 0]],
        (3, 2): [[0, 0], [0, 0], [0, 6 + I]],
    })


def dense_real():
    """Dense invertible real 2x2x2x2 tensor used for norm/radius comparisons."""
    return from_slices((2, 2, 2, 2), {
        (1, 1): [[2, 5], [-5, 0]],
        (2, 1): [[7, 9], [5, 7]],
        (1, 2): [[0, 11], [4, 8]],
        (2, 2): [[1, -1], [9, 2]],
    })


def range_mixed():
    """Real 3x2x3x2 tensor with repeated rows (singular)."""
    return from_slices((3, 2, 3, 2), {
        (1, 1): [[0, 1], [2, 1], [2, 1]],
        (1, 2): [[0, 1], [1, 1], [1, 1]],
        (2, 1): [[1, 1], [1, 2], [1, 2]],
        (2, 2): [[0, 1], [-1, 1], [-1, 1]],
        (3, 1): [[1, 1], [1, 1], [1, 1]],
        (3, 2): [[0, 1], [0, 1], [0, 1]],
    })


def range_sparse():
    """Sparse complex 2x2x2x2 tensor."""
    return from_slices((2, 2, 2, 2), {
        (1, 1): [[0, 0], [1 + I, 0]],
        (2, 1): [[1 - I, 1 - I], [0, 0]],
        (1, 2): [[0, 0], [1 - I, 1 - I]],
        (2, 2): [[0, 1 + I], [0, 0]],
    })


def range_triangular():
    """Complex 2x2x2x2 tensor whose eigenvalues sit on the boundary of W(A)."""
    return from_slices((2, 2, 2, 2), {
        (1, 1): [[I, 0], [0, 0]],
        (2, 1): [[0, 0], [1, 0]],
        (1, 2): [[0, 1 + I], [0, 0]],
        (2, 2): [[0, 0], [0, 2 + I]],
    })


def range_hermitian():
    """Hermitian complex 2x2x2x2 tensor."""
    return from_slices((2, 2, 2, 2), {
        (1, 1): [[1, -3 * I], [-I, 2 - 5 * I]],
        (2, 1): [[I, 1 - I], [1, 3 + I]],
        (1, 2): [[3 * I, 4], [1 + I, 7 + I]],
        (2, 2): [[2 + 5 * I, 7 - I], [3 - I, 0]],
    })


RANGE_TENSORS = {
    "mixed": range_mixed,
    "sparse": range_sparse,
    "triangular": range_triangular,
    "hermitian": range_hermitian,
}

NAMED = {
    "diag_six": diag_six,
    "ones_row": ones_row,
    "complex_diag": complex_diag,
    "dense_real": dense_real,
    **{f"range_{k}": v for k, v in RANGE_TENSORS.items()},
}
