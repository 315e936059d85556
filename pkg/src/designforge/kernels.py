"""Backend selection for the numeric kernels.

The compiled extension is used when it imports; set
``DESIGNFORGE_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _pykernels

_c = None
if os.environ.get("DESIGNFORGE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"


def bareiss_rank(rows, backend=None):
    """Exact rank of an integer matrix given as a sequence of rows."""
    backend = backend or BACKEND
    m = [[int(x) for x in row] for row in rows]
    if not m or not m[0]:
        return 0
    if backend == "cython" and _c is not None:
        try:
            return int(_c.bareiss_rank(np.array(m, dtype=np.int64)))
        except OverflowError:
            pass
    return _pykernels.bareiss_rank(m)


def jacobi_eigenvalues(matrix, tol, max_sweeps, backend=None):
    """Return ``(diagonal, sweeps)`` of cyclic Jacobi; sweeps is -1 on failure."""
    backend = backend or BACKEND
    a = np.array(matrix, dtype=np.float64, order="C", copy=True)
    if backend == "cython" and _c is not None:
        return _c.jacobi_eigenvalues(a, float(tol), int(max_sweeps))
    return _pykernels.jacobi_eigenvalues(a, tol, max_sweeps)
