"""Pure-Python versions of the compiled kernels (same signatures)."""

import numpy as np


def bareiss_rank(m):
    """Rank of an integer matrix; ``m`` is a list of lists of Python ints."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((i for i in range(rank, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        pc = pr[c]
        for i in range(rank + 1, rows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, cols):
                row[j] = (pc * row[j] - f * pr[j]) // prev
            row[c] = 0
        prev = pc
        rank += 1
    return rank


def jacobi_eigenvalues(a, tol, max_sweeps):
    n = a.shape[0]
    norm = np.sqrt(np.sum(a * a))
    iu = np.triu_indices(n, 1)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(2.0 * np.sum(a[iu] ** 2))
        if off <= tol * norm:
            return np.diag(a).copy(), sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                colp = a[:, p].copy()
                colq = a[:, q]
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp = a[p, :].copy()
                rowq = a[q, :]
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
    return np.diag(a).copy(), -1
