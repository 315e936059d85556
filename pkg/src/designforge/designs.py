"""Block designs: incidence, concurrences, development over abelian groups,
duals and a small backtracking isomorphism test."""

from __future__ import annotations

import enum
import os
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidDesign, ParseError, TooLarge, UnknownDesign


@dataclass(frozen=True)
class BlockDesign:
    v_points: int
    blocks: tuple[frozenset, ...]

    def __post_init__(self):
        blocks = []
        for blk in self.blocks:
            pts = list(blk)
            if len(set(pts)) != len(pts):
                raise InvalidDesign(f"block {sorted(pts)} repeats a point")
            for p in pts:
                if not 0 <= int(p) < self.v_points:
                    raise InvalidDesign(f"point {p} outside 0..{self.v_points - 1}")
            blocks.append(frozenset(int(p) for p in pts))
        object.__setattr__(self, "blocks", tuple(blocks))

    @classmethod
    def from_blocks(cls, v_points: int, blocks: Iterable[Iterable[int]]) -> "BlockDesign":
        return cls(v_points, tuple(frozenset(b) for b in blocks))

    @property
    def b(self) -> int:
        return len(self.blocks)

    @cached_property
    def incidence(self) -> np.ndarray:
        """Point-by-block 0/1 matrix."""
        n = np.zeros((self.v_points, self.b), dtype=np.int64)
        for j, blk in enumerate(self.blocks):
            n[list(blk), j] = 1
        n.setflags(write=False)
        return n

    @property
    def replication(self) -> np.ndarray:
        return self.incidence.sum(axis=1)

    @property
    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def block_multiset(self) -> Counter:
        return Counter(self.blocks)


def concurrence_matrix(d: BlockDesign) -> np.ndarray:
    """v x v matrix of pair concurrences; the diagonal holds replications."""
    n = d.incidence
    return n @ n.T


def dual(d: BlockDesign) -> BlockDesign:
    n = d.incidence
    return BlockDesign.from_blocks(d.b, (np.flatnonzero(n[p]).tolist() for p in range(d.v_points)))


def is_resolvable_class(d: BlockDesign, block_ids: Sequence[int]) -> bool:
    seen: set[int] = set()
    for j in block_ids:
        blk = d.blocks[j]
        if seen & blk:
            return False
        seen |= blk
    return len(seen) == d.v_points


@dataclass(frozen=True)
class ParallelClassPartition:
    classes: tuple[tuple[int, ...], ...]


def verify_parallel_partition(d: BlockDesign, p: ParallelClassPartition) -> bool:
    """Every class partitions the points and the classes partition the blocks."""
    used = [j for cls in p.classes for j in cls]
    if sorted(used) != list(range(d.b)):
        return False
    return all(is_resolvable_class(d, cls) for cls in p.classes)


# -- abelian groups and development -----------------------------------------


@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups; elements are mixed-radix integers with
    the first modulus most significant."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        if any(m < 1 for m in self.moduli) or prod(self.moduli) < 2:
            raise ValueError("group order must be at least 2")

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def encode(self, coords: Sequence[int]) -> int:
        x = 0
        for c, m in zip(coords, self.moduli):
            x = x * m + (c % m)
        return x

    def decode(self, x: int) -> tuple[int, ...]:
        out = []
        for m in reversed(self.moduli):
            x, c = divmod(x, m)
            out.append(c)
        return tuple(reversed(out))

    def add(self, x: int, y: int) -> int:
        return self.encode([a + b for a, b in zip(self.decode(x), self.decode(y))])

    def sub(self, x: int, y: int) -> int:
        return self.encode([a - b for a, b in zip(self.decode(x), self.decode(y))])

    def elements(self) -> range:
        return range(self.order)


def _element(g: AbelianGroup, x) -> int:
    if isinstance(x, (tuple, list)):
        return g.encode(x)
    x = int(x)
    if not 0 <= x < g.order:
        raise ValueError(f"{x} is not an element of Z{'xZ'.join(map(str, g.moduli))}")
    return x


def develop(base_blocks, g: AbelianGroup) -> BlockDesign:
    """All distinct translates of the base blocks (short orbits collapse)."""
    blocks: list[frozenset] = []
    seen: set[frozenset] = set()
    for base in base_blocks:
        base = [_element(g, x) for x in base]
        for t in g.elements():
            blk = frozenset(g.add(x, t) for x in base)
            if blk not in seen:
                seen.add(blk)
                blocks.append(blk)
    return BlockDesign(g.order, tuple(blocks))


def is_difference_set(d, g: AbelianGroup, lam: int) -> bool:
    elems = [_element(g, x) for x in d]
    counts = Counter(g.sub(x, y) for x in elems for y in elems if x != y)
    return all(counts.get(e, 0) == lam for e in g.elements() if e != 0)


# -- isomorphism -------------------------------------------------------------


class Iso(str, enum.Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXCEEDED = "budget_exceeded"


MAX_ISO_POINTS = 50


def _point_signatures(d: BlockDesign) -> list[tuple]:
    conc = concurrence_matrix(d)
    sizes = np.array(d.block_sizes)
    sigs = []
    for p in range(d.v_points):
        others = np.delete(conc[p], p)
        mine = sorted(sizes[d.incidence[p] == 1].tolist())
        sigs.append((int(conc[p, p]), tuple(sorted(others.tolist())), tuple(mine)))
    return sigs


def are_isomorphic(d1: BlockDesign, d2: BlockDesign, node_budget: int = 200_000) -> Iso:
    """Backtracking search for a point bijection carrying blocks to blocks.

    Points are matched only to points with the same replication, sorted
    concurrence profile and block-size profile; each partial map must keep
    pair concurrences and the number of blocks through every partially
    mapped block's trace.
    """
    if max(d1.v_points, d2.v_points) > MAX_ISO_POINTS:
        raise TooLarge(f"isomorphism search is limited to {MAX_ISO_POINTS} points")
    if (d1.v_points, d1.b) != (d2.v_points, d2.b):
        return Iso.NO
    if sorted(d1.block_sizes) != sorted(d2.block_sizes):
        return Iso.NO
    sig1, sig2 = _point_signatures(d1), _point_signatures(d2)
    if sorted(sig1) != sorted(sig2):
        return Iso.NO
    v = d1.v_points
    if v == 0:
        return Iso.YES

    conc1, conc2 = concurrence_matrix(d1), concurrence_matrix(d2)
    masks1 = [sum(1 << p for p in blk) for blk in d1.blocks]
    masks2 = [sum(1 << p for p in blk) for blk in d2.blocks]
    blocks_of1 = [[j for j, blk in enumerate(d1.blocks) if p in blk] for p in range(v)]

    # most distinctive signature classes first, then greedy by links to placed points
    class_size = Counter(sig1)
    order = []
    remaining = set(range(v))
    while remaining:
        placed = set(order)
        best = min(
            remaining,
            key=lambda p: (
                class_size[sig1[p]],
                -sum(int(conc1[p, q]) for q in placed),
                p,
            ),
        )
        order.append(best)
        remaining.remove(best)

    candidates = [[q for q in range(v) if sig2[q] == sig1[p]] for p in range(v)]
    image = [-1] * v
    used = [False] * v
    nodes = 0

    def count_containing(masks, s):
        return sum(1 for m in masks if m & s == s)

    def consistent(p, q, depth):
        for t in range(depth):
            pp = order[t]
            if conc1[p, pp] != conc2[q, image[pp]]:
                return False
        for j in blocks_of1[p]:
            s1 = 0
            s2 = 0
            pts = masks1[j]
            for t in range(depth):
                pp = order[t]
                if pts >> pp & 1:
                    s1 |= 1 << pp
                    s2 |= 1 << image[pp]
            if s1 == 0:
                continue
            s1 |= 1 << p
            s2 |= 1 << q
            if count_containing(masks1, s1) != count_containing(masks2, s2):
                return False
        return True

    def leaf_ok():
        mapped = Counter(frozenset(image[p] for p in blk) for blk in d1.blocks)
        return mapped == d2.block_multiset()

    def search(depth):
        nonlocal nodes
        if depth == v:
            return leaf_ok()
        p = order[depth]
        for q in candidates[p]:
            if used[q]:
                continue
            nodes += 1
            if nodes > node_budget:
                raise _Budget
            if not consistent(p, q, depth):
                continue
            image[p] = q
            used[q] = True
            if search(depth + 1):
                return True
            used[q] = False
            image[p] = -1
        return False

    try:
        return Iso.YES if search(0) else Iso.NO
    except _Budget:
        return Iso.BUDGET_EXCEEDED


class _Budget(Exception):
    pass


# -- text format -------------------------------------------------------------


def parse_design(text: str) -> BlockDesign:
    """Read ``v b`` then b lines of point ids (``#`` lines are comments)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty design file")
    try:
        v, b = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise ParseError("header must be 'v b'") from exc
    if len(lines) - 1 != b:
        raise ParseError(f"expected {b} blocks, found {len(lines) - 1}")
    try:
        blocks = [[int(x) for x in ln.split()] for ln in lines[1:]]
        for i, blk in enumerate(blocks):
            if len(set(blk)) != len(blk):
                raise ParseError(f"block {i} repeats a point")
        return BlockDesign.from_blocks(v, blocks)
    except (ValueError, InvalidDesign) as exc:
        raise ParseError(str(exc)) from exc


def format_design(d: BlockDesign) -> str:
    out = [f"{d.v_points} {d.b}"]
    out.extend(" ".join(map(str, sorted(blk))) for blk in d.blocks)
    return "\n".join(out) + "\n"


def read_design(path) -> BlockDesign:
    with open(path, encoding="utf-8") as fh:
        return parse_design(fh.read())


# -- shipped biplanes --------------------------------------------------------

SHIPPED_DIFFERENCE_SETS = {
    "(7,4,2)": ((7,), (0, 1, 2, 4)),
    "(11,5,2)": ((11,), (1, 3, 4, 5, 9)),
    "(16,6,2)": ((4, 4), ((1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3))),
    # fourth powers mod 37
    "(37,9,2)": ((37,), (1, 7, 9, 10, 12, 16, 26, 33, 34)),
}


@lru_cache(maxsize=None)
def shipped_biplane_design(name: str) -> BlockDesign:
    """Develop a shipped biplane difference set after checking it is one."""
    key = name.replace(" ", "")
    if key not in SHIPPED_DIFFERENCE_SETS:
        return _design_from_data_dir(name)
    moduli, base = SHIPPED_DIFFERENCE_SETS[key]
    g = AbelianGroup(moduli)
    if not is_difference_set(base, g, 2):
        raise InvalidDesign(f"shipped set for {key} is not a (v,k,2) difference set")
    return develop([base], g)


def _design_from_data_dir(name: str) -> BlockDesign:
    root = os.environ.get("DESIGNFORGE_DATA")
    if root:
        for candidate in (name, name + ".txt", name + ".design"):
            path = os.path.join(root, candidate)
            if os.path.isfile(path):
                return read_design(path)
    raise UnknownDesign(f"no shipped design named {name!r}")
