"""Information matrices, canonical efficiency factors and the A/D/E summaries.

Eigenvalues come from a cyclic Jacobi solver (see :mod:`designforge.kernels`).
Factors are grouped at 1e-7 and snapped to small rationals when the snap
reproduces the float.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .arrays import LetterArray, summarize
from .designs import BlockDesign, dual
from .errors import (
    BlockSizesVary,
    Disconnected,
    NoConvergence,
    NotEquireplicate,
    UnsupportedReplication,
)
from .latin import cyclic_latin

JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
GROUP_TOL = 1e-7
SNAP_DENOMINATOR = 10_000
SNAP_TOL = 1e-9


def eigen_sym(m, tol: float = JACOBI_TOL, backend: Optional[str] = None) -> list[float]:
    """All eigenvalues of a symmetric matrix, ascending."""
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("eigen_sym needs a square matrix")
    if a.size and not np.allclose(a, a.T, atol=1e-12, rtol=0):
        raise ValueError("matrix is not symmetric")
    if a.shape[0] == 0:
        return []
    diag, sweeps = kernels.jacobi_eigenvalues(a, tol, MAX_SWEEPS, backend=backend)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return sorted(float(x) for x in diag)


def snap_rational(x: float, max_denominator: int = SNAP_DENOMINATOR,
                  tol: float = SNAP_TOL) -> Optional[Fraction]:
    """Nearest fraction with bounded denominator, if it reproduces ``x``."""
    f = Fraction(x).limit_denominator(max_denominator)
    if abs(f.denominator * x - f.numerator) <= tol * f.denominator:
        return f
    return None


def block_information_matrix(d: BlockDesign) -> np.ndarray:
    """I - (rho*s)^-1 N N^T for replication rho and block size s."""
    rep = set(d.replication.tolist())
    if len(rep) != 1:
        raise NotEquireplicate(f"replications {sorted(rep)}")
    sizes = set(d.block_sizes)
    if len(sizes) != 1:
        raise BlockSizesVary(f"block sizes {sorted(sizes)}")
    rho, s = rep.pop(), sizes.pop()
    n = d.incidence.astype(np.float64)
    return np.eye(d.v_points) - (n @ n.T) / (rho * s)


def _drop_zero(eigs: list[float], n: int) -> list[float]:
    thresh = 1e-8 * max(n, 1)
    zeros = [x for x in eigs if abs(x) <= thresh]
    if len(zeros) != 1:
        raise Disconnected(f"{len(zeros)} zero eigenvalues; some contrasts are not estimable")
    i = min(range(len(eigs)), key=lambda j: abs(eigs[j]))
    return eigs[:i] + eigs[i + 1:]


def _group(values: list[float], tol: float = GROUP_TOL) -> list[tuple[float, int]]:
    groups: list[list[float]] = []
    for x in sorted(values):
        if groups and x - groups[-1][-1] <= tol:
            groups[-1].append(x)
        else:
            groups.append([x])
    return [(float(np.mean(g)), len(g)) for g in groups]


@dataclass(frozen=True)
class EfficiencySpectrum:
    factors: tuple[tuple[float, int], ...]
    mu_1: float
    mu_A: float
    mu_D: float
    connected: bool = True
    values: tuple[float, ...] = field(default=(), repr=False)

    @classmethod
    def from_values(cls, values) -> "EfficiencySpectrum":
        vals = sorted(float(x) for x in values)
        arr = np.array(vals)
        return cls(
            factors=tuple(_group(vals)),
            mu_1=vals[0],
            mu_A=len(vals) / float(np.sum(1.0 / arr)),
            mu_D=float(np.exp(np.mean(np.log(arr)))),
            values=tuple(vals),
        )

    @property
    def count(self) -> int:
        return sum(m for _, m in self.factors)

    def rational_factors(self) -> list[tuple[Optional[Fraction], int]]:
        return [(snap_rational(x), m) for x, m in self.factors]

    def as_dict(self) -> dict:
        def show(x):
            f = snap_rational(x)
            return str(f) if f is not None else repr(x)

        return {
            "factors": [f"{show(x)}:{m}" for x, m in self.factors],
            "mu_1": self.mu_1,
            "mu_1_rational": _opt_str(snap_rational(self.mu_1)),
            "mu_A": self.mu_A,
            "mu_A_rational": _opt_str(snap_rational(self.mu_A)),
            "mu_D": self.mu_D,
            "connected": self.connected,
        }


def _opt_str(f):
    return None if f is None else str(f)


def efficiency_spectrum(d: BlockDesign) -> EfficiencySpectrum:
    eigs = eigen_sym(block_information_matrix(d))
    return EfficiencySpectrum.from_values(_drop_zero(eigs, d.v_points))


def spectrum_sum_check(s: EfficiencySpectrum, c: int, k: int, tol: float = 1e-8) -> bool:
    """Factors must add up to c(k-1)/k for c points in blocks of size k."""
    total = sum(x * m for x, m in s.factors)
    return abs(total - c * (k - 1) / k) <= tol


def dual_spectrum_check(d: BlockDesign, tol: float = 1e-8) -> bool:
    """Spectrum of the dual = spectrum of d plus |b - v| unit factors."""
    a = sorted(efficiency_spectrum(d).values)
    b = sorted(efficiency_spectrum(dual(d)).values)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    padded = sorted(small + [1.0] * (len(big) - len(small)))
    return len(padded) == len(big) and all(abs(x - y) <= tol for x, y in zip(padded, big))


def square_lattice(n: int, r: int) -> BlockDesign:
    """n^2 points (i, j) -> i*n + j; parallel classes: rows, columns and, for
    r = 3, the symbols of the cyclic Latin square of order n."""
    if r not in (2, 3):
        raise UnsupportedReplication("square lattices without MOLS need r in {2, 3}")
    sq = cyclic_latin(n).grid
    blocks = [[i * n + j for j in range(n)] for i in range(n)]
    blocks += [[i * n + j for i in range(n)] for j in range(n)]
    if r == 3:
        blocks += [[i * n + j for i in range(n) for j in range(n) if sq[i][j] == s] for s in range(n)]
    return BlockDesign.from_blocks(n * n, blocks)


def row_component(array: LetterArray) -> BlockDesign:
    """Rows as points, letters as blocks (binary arrays only)."""
    return _component(summarize(array).N_LR.T)


def column_component(array: LetterArray) -> BlockDesign:
    """Columns as points, letters as blocks (binary arrays only)."""
    return _component(summarize(array).N_LC.T)


def _component(n: np.ndarray) -> BlockDesign:
    if n.max() > 1:
        raise ValueError("component design is not binary")
    return BlockDesign.from_blocks(n.shape[0], (np.flatnonzero(n[:, j]).tolist() for j in range(n.shape[1])))


def _require_equireplicate(array: LetterArray) -> int:
    rep = set(summarize(array).replication.tolist())
    if len(rep) != 1:
        raise NotEquireplicate(f"letter replications {sorted(rep)}")
    return rep.pop()


def combined_information_matrix(array: LetterArray) -> np.ndarray:
    """Letter information matrix of the row-column design, scaled by 1/k.

    The mean correction is J/v so that the all-ones vector is in the kernel.
    """
    k = _require_equireplicate(array)
    s = summarize(array)
    r, c, v = array.r, array.c, array.v
    lc = s.N_LC.astype(np.float64)
    lr = s.N_LR.astype(np.float64)
    return (np.eye(v) - (lc @ lc.T) / (r * k) - (lr @ lr.T) / (c * k)
            + np.ones((v, v)) / v)


def general_balance_check(array: LetterArray, tol: float = 1e-9) -> bool:
    s = summarize(array)
    a = s.N_LR @ s.N_RL
    b = s.N_LC @ s.N_CL
    return bool(np.max(np.abs(a @ b - b @ a), initial=0) <= tol)


def commutator_norm(array: LetterArray) -> float:
    s = summarize(array)
    a = s.N_LR @ s.N_RL
    b = s.N_LC @ s.N_CL
    return float(np.linalg.norm(a @ b - b @ a))


def _harmonic_nontrivial(m: np.ndarray) -> float:
    vals = np.array(_drop_zero(eigen_sym(m), m.shape[0]))
    return len(vals) / float(np.sum(1.0 / vals))


@dataclass(frozen=True)
class EMResult:
    mu_AR: float
    mu_AC: float
    mu_ARC: float
    equality_gap: float

    def as_dict(self) -> dict:
        return {"mu_AR": self.mu_AR, "mu_AC": self.mu_AC, "mu_ARC": self.mu_ARC,
                "equality_gap": self.equality_gap}


def em_identity(array: LetterArray) -> EMResult:
    """A-criteria of the letter-row, letter-column and row-column designs and
    the gap 1/mu_ARC - (1/mu_AR + 1/mu_AC - 1)."""
    k = _require_equireplicate(array)
    s = summarize(array)
    v, r, c = array.v, array.r, array.c
    lr = s.N_LR.astype(np.float64)
    lc = s.N_LC.astype(np.float64)
    mu_ar = _harmonic_nontrivial(np.eye(v) - (lr @ lr.T) / (k * c))
    mu_ac = _harmonic_nontrivial(np.eye(v) - (lc @ lc.T) / (k * r))
    mu_arc = _harmonic_nontrivial(combined_information_matrix(array))
    gap = 1.0 / mu_arc - (1.0 / mu_ar + 1.0 / mu_ac - 1.0)
    return EMResult(mu_ar, mu_ac, mu_arc, gap)


@dataclass(frozen=True)
class CombinedAnalysis:
    spectrum: EfficiencySpectrum
    em: EMResult
    general_balance: bool


def combined_analysis(array: LetterArray) -> CombinedAnalysis:
    m = combined_information_matrix(array)
    spec = EfficiencySpectrum.from_values(_drop_zero(eigen_sym(m), array.v))
    return CombinedAnalysis(spec, em_identity(array), general_balance_check(array))
