"""Seeded random tensors for property checks and the ``gen`` command."""
import math

import numpy as np

from .tensor import Tensor, outer_product
from .unfold import fold


def complex_normal(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_tensor(rng, half_shape, col_shape=None):
    """Complex Gaussian tensor with row block ``half_shape`` (square by default)."""
    half_shape = tuple(half_shape)
    col_shape = half_shape if col_shape is None else tuple(col_shape)
    return Tensor(complex_normal(rng, half_shape + col_shape), len(half_shape))


def random_unit(rng, shape):
    X = complex_normal(rng, tuple(shape))
    return Tensor(X / np.linalg.norm(X))


def _haar_unitary(rng, n):
    Q, R = np.linalg.qr(complex_normal(rng, (n, n)))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))


def random_unitary(rng, half_shape):
    half_shape = tuple(half_shape)
    n = math.prod(half_shape)
    return fold(_haar_unitary(rng, n), half_shape, half_shape)


def random_isometry(rng, row_shape, col_shape):
    """``B`` with ``B^H * B = I`` (orthonormal unfolded columns)."""
    m, n = math.prod(row_shape), math.prod(col_shape)
    if n > m:
        raise ValueError("an isometry needs at least as many rows as columns")
    Q = _haar_unitary(rng, m)[:, :n]
    return fold(Q, tuple(row_shape), tuple(col_shape))


def random_hermitian(rng, half_shape):
    A = random_tensor(rng, half_shape)
    return Tensor((A.array + A.H.array) / 2, A.row_modes)


def random_normal(rng, half_shape, n_zero=0):
    """Normal tensor ``Q diag(lam) Q^H`` with ``n_zero`` exact zero eigenvalues."""
    half_shape = tuple(half_shape)
    n = math.prod(half_shape)
    Q = _haar_unitary(rng, n)
    lam = complex_normal(rng, n) + 0.5 * np.exp(2j * np.pi * rng.random(n))
    lam[:n_zero] = 0.0
    return fold((Q * lam) @ Q.conj().T, half_shape, half_shape), lam


def random_diag(rng, half_shape):
    half_shape = tuple(half_shape)
    n = math.prod(half_shape)
    return fold(np.diag(complex_normal(rng, n)), half_shape, half_shape)


def random_rank1(rng, half_shape):
    half_shape = tuple(half_shape)
    return outer_product(random_unit(rng, half_shape), random_unit(rng, half_shape))


def random_low_rank(rng, half_shape, rank):
    half_shape = tuple(half_shape)
    n = math.prod(half_shape)
    M = complex_normal(rng, (n, rank)) @ complex_normal(rng, (rank, n))
    return fold(M, half_shape, half_shape)


def random_orthonormal(rng, shape, r):
    """``r`` orthonormal order-N tensors of the given shape."""
    n = math.prod(shape)
    Q = _haar_unitary(rng, n)[:, :r]
    return [fold(Q[:, k], tuple(shape)) for k in range(r)]


KINDS = {
    "diag": random_diag,
    "unitary": random_unitary,
    "rank1": random_rank1,
    "random": random_tensor,
}


def generate(kind, half_shape, seed):
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {sorted(KINDS)}")
    return KINDS[kind](np.random.default_rng(seed), half_shape)
