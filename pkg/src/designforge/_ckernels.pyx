# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: fraction-free rank and cyclic Jacobi rotations."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

cdef extern from *:
    bint __builtin_mul_overflow(long long a, long long b, long long *res) nogil
    bint __builtin_sub_overflow(long long a, long long b, long long *res) nogil


def bareiss_rank(long long[:, ::1] m):
    """Rank of ``m`` by Bareiss elimination in int64.

    ``m`` is overwritten.  Raises OverflowError when an intermediate minor
    leaves the int64 range; the caller retries with Python integers.
    """
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t rank = 0, c, i, j, piv
    cdef long long prev = 1, x, y, t
    for c in range(cols):
        if rank == rows:
            break
        piv = -1
        for i in range(rank, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(cols):
                t = m[piv, j]
                m[piv, j] = m[rank, j]
                m[rank, j] = t
        for i in range(rank + 1, rows):
            for j in range(c + 1, cols):
                if __builtin_mul_overflow(m[rank, c], m[i, j], &x):
                    raise OverflowError("bareiss: int64 overflow")
                if __builtin_mul_overflow(m[i, c], m[rank, j], &y):
                    raise OverflowError("bareiss: int64 overflow")
                if __builtin_sub_overflow(x, y, &t):
                    raise OverflowError("bareiss: int64 overflow")
                m[i, j] = t // prev
            m[i, c] = 0
        prev = m[rank, c]
        rank += 1
    return rank


def jacobi_eigenvalues(double[:, ::1] a, double tol, int max_sweeps):
    """Cyclic Jacobi on a symmetric matrix (overwritten).

    Returns ``(diagonal, sweeps)``; ``sweeps == -1`` means the off-diagonal
    mass did not drop below ``tol * ||a||_F`` within ``max_sweeps``.
    """
    cdef Py_ssize_t n = a.shape[0], p, q, k
    cdef int sweep
    cdef double norm = 0.0, off, theta, t, c, s, akp, akq
    for p in range(n):
        for q in range(n):
            norm += a[p, q] * a[p, q]
    norm = sqrt(norm)
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * a[p, q] * a[p, q]
        if sqrt(off) <= tol * norm:
            return np.asarray([a[k, k] for k in range(n)], dtype=np.float64), sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if fabs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    akp = a[p, k]
                    akq = a[q, k]
                    a[p, k] = c * akp - s * akq
                    a[q, k] = s * akp + c * akq
    return np.asarray([a[k, k] for k in range(n)], dtype=np.float64), -1
