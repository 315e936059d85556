"""(n+1) x n^2 sesqui-arrays on n(n+1) letters from two Latin squares."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .arrays import LetterArray, column_histogram, default_letter_names
from .errors import AlphabetOverlap, DimensionMismatch, NotLatin, ParseError

__all__ = [
    "LatinSquare",
    "cyclic_latin",
    "is_latin",
    "canonical_phi2",
    "construct_latin_sesqui",
    "column_histogram",
    "parse_latin",
    "format_latin",
]


def is_latin(grid) -> bool:
    m = np.asarray(grid)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    n = m.shape[0]
    full = np.arange(n)
    return all(np.array_equal(np.sort(m[i]), full) for i in range(n)) and all(
        np.array_equal(np.sort(m[:, j]), full) for j in range(n)
    )


@dataclass(frozen=True)
class LatinSquare:
    """Order-n square on symbols 0..n-1.  Used as the second ingredient of
    order n+1, symbol n stands for infinity."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        if not grid or not is_latin(grid):
            raise NotLatin("rows and columns must be permutations of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.grid)

    def permuted(self, rows=None, cols=None, symbols=None) -> "LatinSquare":
        m = np.array(self.grid)
        if rows is not None:
            m = m[list(rows)]
        if cols is not None:
            m = m[:, list(cols)]
        if symbols is not None:
            m = np.asarray(symbols)[m]
        return LatinSquare(tuple(map(tuple, m.tolist())))


def cyclic_latin(n: int) -> LatinSquare:
    if n < 1:
        raise ValueError("order must be positive")
    return LatinSquare(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def canonical_phi2(n: int) -> tuple[tuple[int, ...], ...]:
    """Cell (i, j) holds letter n + i*n + j."""
    return tuple(tuple(n + i * n + j for j in range(n)) for i in range(n))


def construct_latin_sesqui(
    phi1: LatinSquare,
    phi2: Optional[Sequence[Sequence[int]]] = None,
    phi3: Optional[LatinSquare] = None,
    infinity_symbol: Optional[int] = None,
    letter_names: Optional[Sequence[str]] = None,
) -> LetterArray:
    """Build the (n+1) x n^2 array.

    ``phi1`` supplies letters 0..n-1.  ``phi2`` is an n x n grid of distinct
    letter ids disjoint from those (default :func:`canonical_phi2`); its
    letters are renumbered n.. in increasing id order.  In ``phi3`` (order
    n+1, default cyclic) ``infinity_symbol`` (default n) marks where a row of
    ``phi1`` goes and symbol s < n stands for row s of ``phi2``.
    """
    n = phi1.n
    if n < 2:
        raise DimensionMismatch("construction needs n >= 2")
    if phi2 is None:
        phi2 = canonical_phi2(n)
    p2 = np.asarray(phi2, dtype=np.int64)
    if p2.shape != (n, n):
        raise DimensionMismatch(f"phi2 must be {n}x{n}, got {p2.shape}")
    if len(set(p2.ravel().tolist())) != n * n:
        raise DimensionMismatch("phi2 letters must be distinct")
    if set(p2.ravel().tolist()) & set(range(n)):
        raise AlphabetOverlap("phi2 letters must be disjoint from the letters of phi1")
    relabel = {x: n + i for i, x in enumerate(sorted(p2.ravel().tolist()))}
    p2 = np.vectorize(relabel.get)(p2)

    if phi3 is None:
        phi3 = cyclic_latin(n + 1)
    if phi3.n != n + 1:
        raise DimensionMismatch(f"phi3 must have order {n + 1}, got {phi3.n}")
    inf = n if infinity_symbol is None else infinity_symbol
    p3 = np.array(phi3.grid)
    if inf != n:
        # move the infinity symbol to id n, keep the others in order
        others = [s for s in range(n + 1) if s != inf]
        mapping = np.empty(n + 1, dtype=np.int64)
        mapping[others] = np.arange(n)
        mapping[inf] = n
        p3 = mapping[p3]
    p1 = np.array(phi1.grid)

    drop = int(np.flatnonzero(p3[n] == n)[0])
    keep = [j for j in range(n + 1) if j != drop]
    rows = []
    for i in range(n + 1):
        row: list[int] = []
        for j in keep:
            s = p3[i, j]
            row.extend((p1[i] if s == n else p2[s]).tolist())
        rows.append(tuple(row))
    v = n * n + n
    names = tuple(letter_names) if letter_names is not None else default_letter_names(v)
    return LetterArray(tuple(rows), v, names)


# -- text format -------------------------------------------------------------


def parse_latin(text: str) -> LatinSquare:
    """Read ``n`` then n rows of symbol ids; ``inf`` means symbol n-1."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty Latin square file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ParseError("first line must be the order") from exc
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows")
    rows = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} symbols in {ln!r}")
        try:
            rows.append(tuple(n - 1 if t == "inf" else int(t) for t in toks))
        except ValueError as exc:
            raise ParseError(f"bad symbol in {ln!r}") from exc
    try:
        return LatinSquare(tuple(rows))
    except NotLatin as exc:
        raise ParseError(str(exc)) from exc


def format_latin(sq: LatinSquare, with_infinity: bool = False) -> str:
    n = sq.n
    out = [str(n)]
    for row in sq.grid:
        out.append(" ".join("inf" if with_infinity and x == n - 1 else str(x) for x in row))
    return "\n".join(out) + "\n"
