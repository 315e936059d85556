"""Letter arrays, their incidence matrices, and the conditions A0-A4.

An r x c letter array puts one letter (an id in ``0..v-1``) in each cell.
The incidence matrices are the letter-by-row and letter-by-column counts;
everything else in this module is derived from those two.
"""

from __future__ import annotations

import enum
import string
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .errors import AlphabetTooSmall, InvalidArray, ParseError

CONDITIONS = ("A0", "A1", "A2", "A3", "A4")


def default_letter_names(v: int) -> tuple[str, ...]:
    """Spreadsheet-style names: A..Z, AA, AB, ..."""
    names = []
    for i in range(v):
        s = ""
        i += 1
        while i:
            i, rem = divmod(i - 1, 26)
            s = string.ascii_uppercase[rem] + s
        names.append(s)
    return tuple(names)


@dataclass(frozen=True)
class LetterArray:
    """An r x c grid of letter ids over an alphabet of size v.

    Every id in ``0..v-1`` must occur somewhere in the grid.
    """

    grid: tuple[tuple[int, ...], ...]
    v: int
    letter_names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.grid)
        object.__setattr__(self, "grid", grid)
        if self.letter_names is not None:
            object.__setattr__(self, "letter_names", tuple(self.letter_names))
        if not grid or not grid[0]:
            raise InvalidArray("array must have at least one row and one column")
        c = len(grid[0])
        if any(len(row) != c for row in grid):
            raise InvalidArray("rows have different lengths")
        if self.v < 1:
            raise InvalidArray("alphabet size must be positive")
        seen = set()
        for row in grid:
            for x in row:
                if not 0 <= x < self.v:
                    raise InvalidArray(f"letter id {x} outside 0..{self.v - 1}")
                seen.add(x)
        if len(seen) != self.v:
            missing = sorted(set(range(self.v)) - seen)
            raise InvalidArray(f"letters never used: {missing}")
        if self.letter_names is not None and len(self.letter_names) != self.v:
            raise InvalidArray("letter_names must have one entry per letter")

    @property
    def r(self) -> int:
        return len(self.grid)

    @property
    def c(self) -> int:
        return len(self.grid[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.r, self.c

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.array(self.grid, dtype=np.int64)
        m.setflags(write=False)
        return m

    def names(self) -> tuple[str, ...]:
        return self.letter_names if self.letter_names is not None else tuple(
            str(i) for i in range(self.v))

    def transpose(self) -> "LetterArray":
        return LetterArray(tuple(zip(*self.grid)), self.v, self.letter_names)

    def permuted(self, row_perm=None, col_perm=None, letter_perm=None) -> "LetterArray":
        """Reorder rows/columns (new index i takes old index perm[i]) and rename
        letters (old id x becomes letter_perm[x])."""
        m = self.matrix
        if row_perm is not None:
            m = m[list(row_perm), :]
        if col_perm is not None:
            m = m[:, list(col_perm)]
        names = self.letter_names
        if letter_perm is not None:
            lp = np.asarray(letter_perm)
            m = lp[m]
            if names is not None:
                new = [""] * self.v
                for old, nid in enumerate(letter_perm):
                    new[nid] = names[old]
                names = tuple(new)
        return LetterArray(tuple(map(tuple, m.tolist())), self.v, names)


@dataclass(frozen=True)
class IncidenceSummary:
    N_LR: np.ndarray
    N_LC: np.ndarray
    replication: np.ndarray
    row_pair_intersections: np.ndarray
    col_pair_intersections: np.ndarray
    row_col_intersections: np.ndarray

    @property
    def N_RL(self):
        return self.N_LR.T

    @property
    def N_CL(self):
        return self.N_LC.T

    def column_histograms(self) -> list[dict[int, int]]:
        return _pair_histograms(self.col_pair_intersections)

    def row_histograms(self) -> list[dict[int, int]]:
        return _pair_histograms(self.row_pair_intersections)


def _pair_histograms(m: np.ndarray) -> list[dict[int, int]]:
    out = []
    for i in range(m.shape[0]):
        h: dict[int, int] = {}
        for j in range(m.shape[1]):
            if i != j:
                h[int(m[i, j])] = h.get(int(m[i, j]), 0) + 1
        out.append(dict(sorted(h.items())))
    return out


def summarize(array: LetterArray) -> IncidenceSummary:
    m = array.matrix
    r, c, v = array.r, array.c, array.v
    n_lr = np.zeros((v, r), dtype=np.int64)
    n_lc = np.zeros((v, c), dtype=np.int64)
    rows = np.repeat(np.arange(r), c)
    cols = np.tile(np.arange(c), r)
    letters = m.ravel()
    np.add.at(n_lr, (letters, rows), 1)
    np.add.at(n_lc, (letters, cols), 1)
    return IncidenceSummary(
        N_LR=n_lr,
        N_LC=n_lc,
        replication=n_lr.sum(axis=1),
        row_pair_intersections=n_lr.T @ n_lr,
        col_pair_intersections=n_lc.T @ n_lc,
        row_col_intersections=n_lr.T @ n_lc,
    )


def column_histogram(array: LetterArray) -> list[dict[int, int]]:
    """For each column, how many other columns share each number of letters."""
    return summarize(array).column_histograms()


class Kind(str, enum.Enum):
    TRIPLE = "TRIPLE"
    DOUBLE = "DOUBLE"
    SESQUI = "SESQUI"
    AO_ONLY = "AO_ONLY"
    NONE = "NONE"


@dataclass(frozen=True)
class Classification:
    kind: Kind
    r: int
    c: int
    v: int
    k: Optional[int]
    lambda_rr: Optional[int]
    lambda_cc: Optional[int]
    gamma: tuple[int, ...]
    lambda_rc: Optional[int]
    conditions: dict

    def params(self) -> tuple:
        """Parameter tuple in the usual TA/DA/SA order for this kind."""
        if self.kind is Kind.TRIPLE:
            return (self.v, self.k, self.lambda_rr, self.lambda_cc, self.lambda_rc)
        if self.kind is Kind.DOUBLE:
            return (self.v, self.k, self.lambda_rr, self.lambda_cc)
        if self.kind is Kind.SESQUI:
            return (self.v, self.k, self.lambda_rr, self.gamma, self.lambda_rc)
        return (self.v, self.k, self.lambda_rr, self.gamma, self.lambda_rc)

    def notation(self) -> str:
        prefix = {Kind.TRIPLE: "TA", Kind.DOUBLE: "DA", Kind.SESQUI: "SA"}.get(self.kind)
        if prefix is None:
            return f"{self.kind.value}({self.r}x{self.c}, v={self.v})"
        parts = []
        for p in self.params():
            if isinstance(p, tuple):
                parts.append("{" + ",".join(map(str, p)) + "}")
            else:
                parts.append(str(p))
        return f"{prefix}({','.join(parts)} : {self.r}x{self.c})"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "notation": self.notation(),
            "r": self.r,
            "c": self.c,
            "v": self.v,
            "k": self.k,
            "lambda_rr": self.lambda_rr,
            "lambda_cc": self.lambda_cc,
            "gamma": list(self.gamma),
            "lambda_rc": self.lambda_rc,
            **{name: ("pass" if ok else "fail") for name, ok in self.conditions.items()},
        }


def _off_diagonal(m: np.ndarray) -> np.ndarray:
    return m[~np.eye(m.shape[0], dtype=bool)]


def _constant(values: np.ndarray) -> Optional[int]:
    if values.size == 0:
        return None
    first = int(values.flat[0])
    return first if np.all(values == first) else None


def check_conditions(array: LetterArray) -> Classification:
    r, c, v = array.r, array.c, array.v
    if v <= max(r, c):
        raise AlphabetTooSmall(f"v={v} must exceed max(r, c)={max(r, c)}")
    s = summarize(array)
    a0 = bool(s.N_LR.max() <= 1 and s.N_LC.max() <= 1)
    k = _constant(s.replication)
    lam_rr = _constant(_off_diagonal(s.row_pair_intersections))
    col_off = _off_diagonal(s.col_pair_intersections)
    lam_cc = _constant(col_off)
    lam_rc = _constant(s.row_col_intersections)
    conds = {
        "A0": a0,
        "A1": k is not None,
        # a zero constant does not count as balanced
        "A2": bool(lam_rr),
        "A3": bool(lam_cc),
        "A4": lam_rc is not None,
    }
    if all(conds.values()):
        kind = Kind.TRIPLE
    elif conds["A0"] and conds["A1"] and conds["A2"] and conds["A3"]:
        kind = Kind.DOUBLE
    elif conds["A0"] and conds["A1"] and conds["A2"] and conds["A4"]:
        kind = Kind.SESQUI
    elif conds["A0"] and conds["A1"] and conds["A4"]:
        kind = Kind.AO_ONLY
    else:
        kind = Kind.NONE
    return Classification(
        kind=kind,
        r=r,
        c=c,
        v=v,
        k=k,
        lambda_rr=lam_rr if conds["A2"] else None,
        lambda_cc=lam_cc if conds["A3"] else None,
        gamma=tuple(sorted({int(x) for x in col_off})),
        lambda_rc=lam_rc,
        conditions=conds,
    )


@dataclass(frozen=True)
class IntegerMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(e) != self.cols for e in self.entries):
            raise ValueError("entries do not match the stated dimensions")

    @classmethod
    def from_rows(cls, rows) -> "IntegerMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        return cls(len(entries), len(entries[0]) if entries else 0, entries)


def rank_exact(m) -> int:
    """Rank over the rationals, by fraction-free elimination on integers.

    Accepts an :class:`IntegerMatrix`, a numpy integer array or nested lists.
    """
    if isinstance(m, IntegerMatrix):
        rows = m.entries
    else:
        rows = np.asarray(m)
        if rows.dtype.kind not in "iub" and rows.dtype != object:
            raise TypeError("rank_exact needs an integer matrix")
        rows = rows.tolist()
    return kernels.bareiss_rank(rows)


@dataclass(frozen=True)
class RankReport:
    rank_rl: int
    rank_lc: int
    v: int
    r: int
    c: int
    adjusted_orthogonality: bool
    rank_sum_ok: bool
    sesqui_bound_ok: bool
    triple_bound_ok: bool

    def as_dict(self) -> dict:
        return {
            "rank_N_RL": self.rank_rl,
            "rank_N_LC": self.rank_lc,
            "v": self.v,
            "r": self.r,
            "c": self.c,
            "A4": self.adjusted_orthogonality,
            "rank_sum_le_v_plus_1": self.rank_sum_ok,
            "v_ge_r_plus_rank_LC_minus_1": self.sesqui_bound_ok,
            "v_ge_r_plus_c_minus_1": self.triple_bound_ok,
        }


def check_rank_inequalities(array: LetterArray) -> RankReport:
    """Incidence ranks and the rank inequalities implied by adjusted orthogonality.

    The bounds are evaluated whatever the array; they are only guaranteed
    when ``adjusted_orthogonality`` is true.
    """
    s = summarize(array)
    rank_rl = rank_exact(s.N_RL)
    rank_lc = rank_exact(s.N_LC)
    v, r, c = array.v, array.r, array.c
    return RankReport(
        rank_rl=rank_rl,
        rank_lc=rank_lc,
        v=v,
        r=r,
        c=c,
        adjusted_orthogonality=_constant(s.row_col_intersections) is not None,
        rank_sum_ok=rank_rl + rank_lc <= v + 1,
        sesqui_bound_ok=v >= r + rank_lc - 1,
        triple_bound_ok=v >= r + c - 1,
    )


# -- text format -------------------------------------------------------------

LETTERS_DIRECTIVE = "# letters:"


def _content_lines(text: str):
    directive = None
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith(LETTERS_DIRECTIVE):
                directive = line[len(LETTERS_DIRECTIVE):].split()
            continue
        lines.append(line)
    return lines, directive


def parse_array(text: str) -> LetterArray:
    """Read the array text format.

    Line 1 is ``r c v``; then r lines of c tokens.  Tokens become ids in
    row-major first-appearance order unless a ``# letters: ...`` comment
    fixes the id order explicitly.
    """
    lines, directive = _content_lines(text)
    if not lines:
        raise ParseError("empty array file")
    header = lines[0].split()
    if len(header) != 3:
        raise ParseError("header must be 'r c v'")
    try:
        r, c, v = (int(x) for x in header)
    except ValueError as exc:
        raise ParseError(f"bad header: {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != r:
        raise ParseError(f"expected {r} rows, found {len(body)}")
    ids: dict[str, int] = {}
    if directive is not None:
        if len(directive) != v or len(set(directive)) != v:
            raise ParseError("letters directive must list v distinct names")
        ids = {name: i for i, name in enumerate(directive)}
    grid = []
    for line in body:
        tokens = line.split()
        if len(tokens) != c:
            raise ParseError(f"expected {c} tokens in row {line!r}")
        row = []
        for tok in tokens:
            if tok not in ids:
                if directive is not None:
                    raise ParseError(f"letter {tok!r} not declared")
                ids[tok] = len(ids)
            row.append(ids[tok])
        grid.append(row)
    if len(ids) != v:
        raise ParseError(f"header says v={v} but {len(ids)} letters were found")
    names = tuple(sorted(ids, key=ids.get))
    try:
        return LetterArray(tuple(map(tuple, grid)), v, names)
    except InvalidArray as exc:
        raise ParseError(str(exc)) from exc


def format_array(array: LetterArray, comments: Sequence[str] = ()) -> str:
    names = array.names()
    out = [f"{array.r} {array.c} {array.v}"]
    out.extend(f"# {line}" for line in comments)
    out.append(LETTERS_DIRECTIVE + " " + " ".join(names))
    for row in array.grid:
        out.append(" ".join(names[x] for x in row))
    return "\n".join(out) + "\n"


def read_array(path) -> LetterArray:
    with open(path, encoding="utf-8") as fh:
        return parse_array(fh.read())
