"""Small dense complex solvers used behind the tensor spectral routines.

Everything here works on plain numpy arrays:

* :func:`jacobi_eigh` - cyclic Jacobi for (batches of) Hermitian matrices.
  Rotations are applied elementwise so each matrix in a batch follows exactly
  the same arithmetic it would follow alone.
* :func:`schur` / :func:`eig` - Householder Hessenberg reduction followed by
  implicitly shifted single-shift complex QR, eigenvectors by back
  substitution on the triangular factor.
* :func:`jacobi_svd` - one-sided (Hestenes) Jacobi SVD.
* :func:`lu_det` - determinant through LU with partial pivoting.

Iteration caps are ``100 * n`` sweeps (Jacobi) or QR steps; exceeding them
raises :class:`ConvergenceError`.
"""
import numpy as np

from .errors import ConvergenceError

EPS = np.finfo(np.float64).eps


def _jacobi_rotation(app, aqq, apq, tol):
    """Elementwise 2x2 unitary ``J`` with ``(J^H A J)_pq = 0``.

    ``app``/``aqq`` are real diagonals, ``apq`` the complex off-diagonal.
    Where ``|apq| <= tol`` the rotation is exactly the identity.
    Returns ``(j00, j01, j10, j11, rotate_mask)``.
    """
    r = np.abs(apq)
    rot = r > tol
    safe_r = np.where(rot, r, 1.0)
    phase = np.where(rot, apq / safe_r, 1.0)
    theta = np.where(rot, (aqq - app) / (2.0 * safe_r), 0.0)
    sgn = np.where(theta >= 0, 1.0, -1.0)
    t = sgn / (np.abs(theta) + np.hypot(theta, 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    c = np.where(rot, c, 1.0)
    s = np.where(rot, s, 0.0)
    cphase = np.conj(phase)
    return c + 0j, s + 0j, -s * cphase, c * cphase, rot


def jacobi_eigh(H, vectors=True, max_sweeps=None):
    """Eigen-decomposition of Hermitian matrices by cyclic Jacobi.

    Parameters
    ----------
    H : array_like, shape (n, n) or (B, n, n)
        Hermitian matrix or batch of them (only the Hermitian part is
        meaningful; the caller is responsible for symmetry).
    vectors : bool
        Accumulate eigenvectors.

    Returns
    -------
    w : ndarray, shape (n,) or (B, n)
        Real eigenvalues in nonincreasing order.
    V : ndarray or None
        Orthonormal eigenvectors as columns, matching ``w``.  Each column's
        largest entry is rotated to be real positive.
    """
    A = np.array(H, dtype=np.complex128, copy=True)
    single = A.ndim == 2
    if single:
        A = A[None]
    B, n, _ = A.shape
    V = np.broadcast_to(np.eye(n, dtype=np.complex128), (B, n, n)).copy() if vectors else None
    tol = EPS * np.sqrt(np.sum(np.abs(A) ** 2, axis=(1, 2)))
    if max_sweeps is None:
        max_sweeps = 100 * max(n, 1)

    for _ in range(max_sweeps):
        any_rot = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                j00, j01, j10, j11, rot = _jacobi_rotation(
                    A[:, p, p].real, A[:, q, q].real, A[:, p, q], tol
                )
                if not rot.any():
                    continue
                any_rot = True
                j00, j01, j10, j11 = (x[:, None] for x in (j00, j01, j10, j11))
                cp, cq = A[:, :, p].copy(), A[:, :, q].copy()
                A[:, :, p] = cp * j00 + cq * j10
                A[:, :, q] = cp * j01 + cq * j11
                rp, rq = A[:, p, :].copy(), A[:, q, :].copy()
                A[:, p, :] = np.conj(j00) * rp + np.conj(j10) * rq
                A[:, q, :] = np.conj(j01) * rp + np.conj(j11) * rq
                A[rot, p, q] = 0.0
                A[rot, q, p] = 0.0
                A[:, p, p] = A[:, p, p].real
                A[:, q, q] = A[:, q, q].real
                if vectors:
                    vp, vq = V[:, :, p].copy(), V[:, :, q].copy()
                    V[:, :, p] = vp * j00 + vq * j10
                    V[:, :, q] = vp * j01 + vq * j11
        if not any_rot:
            break
    else:
        raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps", stage="jacobi_eigh")

    w = np.diagonal(A, axis1=1, axis2=2).real.copy()
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if vectors:
        V = np.take_along_axis(V, order[:, None, :], axis=2)
        V = _fix_phase(V)
    if single:
        return w[0], (V[0] if vectors else None)
    return w, V


def _fix_phase(V):
    """Rotate each column so that its largest-modulus entry is real positive."""
    idx = np.argmax(np.abs(V), axis=-2)[..., None, :]
    pivot = np.take_along_axis(V, idx, axis=-2)
    mod = np.abs(pivot)
    return V * np.where(mod > 0, np.conj(pivot) / np.where(mod > 0, mod, 1.0), 1.0)


def hessenberg(A):
    """Householder reduction ``A = Q Hs Q^H`` with ``Hs`` upper Hessenberg."""
    Hs = np.array(A, dtype=np.complex128, copy=True)
    n = Hs.shape[0]
    Q = np.eye(n, dtype=np.complex128)
    for k in range(n - 2):
        x = Hs[k + 1 :, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        v = x.copy()
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        Hs[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ Hs[k + 1 :, :])
        Hs[:, k + 1 :] -= 2.0 * np.outer(Hs[:, k + 1 :] @ v, v.conj())
        Q[:, k + 1 :] -= 2.0 * np.outer(Q[:, k + 1 :] @ v, v.conj())
        Hs[k + 2 :, k] = 0.0
    return Hs, Q


def _wilkinson(a, b, c, d):
    half = (a - d) / 2.0
    disc = np.sqrt(half * half + b * c)
    mean = (a + d) / 2.0
    mu1, mu2 = mean + disc, mean - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def schur(A, max_iter=None):
    """Complex Schur form ``A = Z T Z^H`` with ``T`` upper triangular."""
    T, Z = hessenberg(A)
    n = T.shape[0]
    if n <= 1:
        return T, Z
    if max_iter is None:
        max_iter = 100 * n
    hnorm = np.linalg.norm(T)
    hi, its, total = n - 1, 0, 0
    while hi >= 1:
        l = hi
        while l > 0:
            s = abs(T[l - 1, l - 1]) + abs(T[l, l])
            if s == 0.0:
                s = hnorm
            if abs(T[l, l - 1]) <= EPS * s:
                T[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            its = 0
            continue
        its += 1
        total += 1
        if total > max_iter:
            raise ConvergenceError(f"QR iteration did not converge in {max_iter} steps", stage="schur")
        if its % 10 == 0:
            # exceptional shift to break cycles
            mu = T[hi, hi] + abs(T[hi, hi - 1]) * (0.75 + 0.5j)
        else:
            mu = _wilkinson(T[hi - 1, hi - 1], T[hi - 1, hi], T[hi, hi - 1], T[hi, hi])
        x, y = T[l, l] - mu, T[l + 1, l]
        for k in range(l, hi):
            if k > l:
                x, y = T[k, k - 1], T[k + 1, k - 1]
            r = np.hypot(abs(x), abs(y))
            if r == 0.0:
                continue
            c, s = x / r, y / r
            G = np.array([[np.conj(c), np.conj(s)], [-s, c]])
            T[k : k + 2, :] = G @ T[k : k + 2, :]
            T[:, k : k + 2] = T[:, k : k + 2] @ G.conj().T
            Z[:, k : k + 2] = Z[:, k : k + 2] @ G.conj().T
            if k > l:
                T[k + 1, k - 1] = 0.0
    return np.triu(T), Z


def eig(A, vectors=True):
    """Eigenvalues (and unit eigenvectors) of a general complex matrix."""
    A = np.asarray(A, dtype=np.complex128)
    n = A.shape[0]
    T, Z = schur(A)
    w = np.diagonal(T).copy()
    if not vectors:
        return w, None
    small = max(EPS * np.linalg.norm(T), np.finfo(np.float64).tiny)
    X = np.zeros((n, n), dtype=np.complex128)
    for k in range(n):
        x = np.zeros(n, dtype=np.complex128)
        x[k] = 1.0
        for i in range(k - 1, -1, -1):
            d = T[i, i] - T[k, k]
            if abs(d) < small:
                d = small
            x[i] = -(T[i, i + 1 : k + 1] @ x[i + 1 : k + 1]) / d
        v = Z @ x
        X[:, k] = v / np.linalg.norm(v)
    return w, _fix_phase(X)


def _complete_columns(Q, m):
    """Extend orthonormal columns ``Q`` (m x k) to an m x m unitary."""
    cols = [Q[:, j] for j in range(Q.shape[1])]
    while len(cols) < m:
        basis = np.array(cols).T if cols else np.zeros((m, 0), dtype=np.complex128)
        best, best_norm = None, -1.0
        for i in range(m):
            v = np.zeros(m, dtype=np.complex128)
            v[i] = 1.0
            for _ in range(2):
                v = v - basis @ (basis.conj().T @ v)
            nv = np.linalg.norm(v)
            if nv > best_norm:
                best, best_norm = v, nv
        cols.append(best / best_norm)
    return np.array(cols).T


def jacobi_svd(M, max_sweeps=None):
    """One-sided Jacobi SVD ``M = U diag(s) V^H``.

    Returns full unitary ``U`` (m x m), ``V`` (n x n) and the
    ``min(m, n)`` singular values in nonincreasing order.
    """
    M = np.asarray(M, dtype=np.complex128)
    m, n = M.shape
    if m < n:
        V, s, U = jacobi_svd(M.conj().T, max_sweeps)
        return U, s, V
    A = M.copy()
    V = np.eye(n, dtype=np.complex128)
    if max_sweeps is None:
        max_sweeps = 100 * max(n, 1)
    floor = (EPS * np.linalg.norm(M)) ** 2
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                ap, aq = A[:, p], A[:, q]
                alpha = np.vdot(ap, ap).real
                beta = np.vdot(aq, aq).real
                gamma = np.vdot(ap, aq)
                # columns at roundoff level are left alone; rotating them never settles
                if abs(gamma) <= EPS * np.sqrt(alpha * beta) or min(alpha, beta) <= floor:
                    continue
                rotated = True
                j00, j01, j10, j11, _ = _jacobi_rotation(
                    np.array(alpha), np.array(beta), np.array(gamma), 0.0
                )
                J = np.array([[j00, j01], [j10, j11]])
                A[:, [p, q]] = A[:, [p, q]] @ J
                V[:, [p, q]] = V[:, [p, q]] @ J
        if not rotated:
            break
    else:
        raise ConvergenceError(f"one-sided Jacobi did not converge in {max_sweeps} sweeps", stage="svd")

    s = np.linalg.norm(A, axis=0)
    order = np.argsort(-s, kind="stable")
    s, A, V = s[order], A[:, order], V[:, order]
    cutoff = EPS * max(m, n) * (s[0] if n else 0.0)
    keep = int(np.sum(s > cutoff)) if n else 0
    U = A[:, :keep] / s[:keep]
    U = _complete_columns(U, m)
    return U, s, V


def lu_det(M):
    """Determinant by LU with partial pivoting (exact zero pivot gives 0)."""
    A = np.array(M, dtype=np.complex128, copy=True)
    n = A.shape[0]
    det = 1.0 + 0j
    for k in range(n):
        p = k + int(np.argmax(np.abs(A[k:, k])))
        if A[p, k] == 0:
            return 0j
        if p != k:
            A[[k, p]] = A[[p, k]]
            det = -det
        det *= A[k, k]
        A[k + 1 :, k:] -= np.outer(A[k + 1 :, k] / A[k, k], A[k, k:])
    return complex(det)
