"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Workloads are the matrices the package actually feeds the kernels: incidence
matrices for exact rank and information matrices for the eigenvalue solver.
"""

import argparse
import timeit

import numpy as np

from designforge import kernels
from designforge.designs import shipped_biplane_design
from designforge.optimality import JACOBI_TOL, MAX_SWEEPS, block_information_matrix
from designforge.sylvester import sylvester_pipeline


def workloads():
    theta = sylvester_pipeline().theta
    b37 = shipped_biplane_design("(37,9,2)")
    rng = np.random.default_rng(0)
    dense = rng.integers(-3, 4, size=(60, 60))
    sym = rng.standard_normal((80, 80))
    return [
        ("rank", "theta incidence 36x42", theta.incidence),
        ("rank", "(37,9,2) incidence", b37.incidence),
        ("rank", "random int 60x60", dense),
        ("eig", "theta information 36x36", block_information_matrix(theta)),
        ("eig", "(37,9,2) information", block_information_matrix(b37)),
        ("eig", "random symmetric 80x80", sym + sym.T),
    ]


def run(kind, matrix, backend):
    if kind == "rank":
        return kernels.bareiss_rank(matrix.tolist(), backend=backend)
    return kernels.jacobi_eigenvalues(matrix, JACOBI_TOL, MAX_SWEEPS, backend=backend)


def overflows(matrix):
    try:
        kernels._c.bareiss_rank(np.array(matrix, dtype=np.int64))
    except OverflowError:
        return True
    return False


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["python"] + (["cython"] if kernels._c is not None else [])
    if len(backends) == 1:
        print("compiled extension not available; timing the fallback only")
    print(f"{'workload':34} " + " ".join(f"{b:>12}" for b in backends) + ("      speedup" if len(backends) == 2 else ""))
    for kind, label, m in workloads():
        times = []
        for b in backends:
            run(kind, m, b)
            times.append(min(timeit.repeat(lambda: run(kind, m, b), number=1, repeat=args.repeat)))
        line = f"{kind + ': ' + label:34} " + " ".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) == 2:
            line += f" {times[0] / times[1]:10.1f}x"
            if kind == "rank" and overflows(m):
                line += "  (int64 overflow, exact fallback)"
        print(line)


if __name__ == "__main__":
    main()
