"""Biplanes, Hussain chains and the K x (V-K) arrays on K(K-1)/2 letters.

For a block B and a point q outside it, the blocks through q meet B in K
pairs; those pairs are the edges of the 2-regular Hussain chain H(q).  Row p,
column q of the constructed array holds the pair of neighbours of p in H(q).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .arrays import Classification, Kind, LetterArray, check_conditions
from .designs import BlockDesign, Iso, are_isomorphic, concurrence_matrix
from .errors import BlockSizeTooSmall, ChainAxiomViolation, NotBiplane, WrongBlockSize


@dataclass(frozen=True)
class Biplane:
    design: BlockDesign
    V: int
    K: int


def as_biplane(d: BlockDesign) -> Biplane:
    V = d.v_points
    if d.b != V:
        raise NotBiplane("symmetric", f"{d.b} blocks on {V} points")
    sizes = set(d.block_sizes)
    if len(sizes) != 1:
        raise NotBiplane("block_size", f"block sizes {sorted(sizes)}")
    K = sizes.pop()
    if V != 1 + K * (K - 1) // 2:
        raise NotBiplane("order", f"V={V} but 1 + K(K-1)/2 = {1 + K * (K - 1) // 2}")
    conc = concurrence_matrix(d)
    off = {int(conc[p, q]) for p in range(V) for q in range(V) if p != q}
    if off != {2}:
        raise NotBiplane("lambda", f"pair concurrences {sorted(off)}")
    return Biplane(d, V, K)


def _cycles(points: Sequence[int], edges: Iterable[frozenset]) -> list[tuple[int, ...]]:
    """Split a 2-regular graph into cycles; each starts at its smallest point and
    heads toward the smaller neighbour."""
    nbrs: dict[int, list[int]] = {p: [] for p in points}
    for e in edges:
        x, y = sorted(e)
        nbrs[x].append(y)
        nbrs[y].append(x)
    left = set(points)
    out = []
    while left:
        start = min(left)
        cyc = [start]
        prev, cur = start, min(nbrs[start])
        while cur != start:
            cyc.append(cur)
            a, b = nbrs[cur]
            prev, cur = cur, (b if a == prev else a)
        left -= set(cyc)
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class HussainChain:
    block_points: tuple[int, ...]
    edges: frozenset

    def __post_init__(self):
        pts = tuple(self.block_points)
        edges = frozenset(frozenset(e) for e in self.edges)
        object.__setattr__(self, "block_points", pts)
        object.__setattr__(self, "edges", edges)
        if len(edges) != len(pts):
            raise ValueError(f"chain needs {len(pts)} edges, got {len(edges)}")
        deg = Counter(p for e in edges for p in e)
        if any(len(e) != 2 for e in edges) or set(deg) != set(pts) or set(deg.values()) != {2}:
            raise ValueError("chain must be 2-regular on the block points")
        if min(self.cycle_type) < 3:
            raise ValueError("chain has a cycle shorter than 3")

    @property
    def cycles(self) -> list[tuple[int, ...]]:
        return _cycles(self.block_points, self.edges)

    @property
    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def neighbours(self, p: int) -> frozenset:
        return frozenset(x for e in self.edges if p in e for x in e if x != p)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]]) -> "HussainChain":
        pts = sorted(p for c in cycles for p in c)
        edges = frozenset(frozenset((c[i], c[(i + 1) % len(c)])) for c in cycles for i in range(len(c)))
        return cls(tuple(pts), edges)


def hussain_chains(bp: Biplane, block_index: int) -> dict[int, HussainChain]:
    """Chains on block ``block_index``, keyed by outside point."""
    blocks = bp.design.blocks
    B = blocks[block_index]
    pts = tuple(sorted(B))
    out = {}
    for q in range(bp.V):
        if q in B:
            continue
        edges = frozenset(B & blk for j, blk in enumerate(blocks) if j != block_index and q in blk)
        out[q] = HussainChain(pts, edges)
    return out


def two_step_graph(chain: HussainChain) -> frozenset:
    """Pairs of distinct points with a common neighbour in the chain."""
    pairs = set()
    for p in chain.block_points:
        nb = sorted(chain.neighbours(p))
        for x, y in combinations(nb, 2):
            pairs.add(frozenset((x, y)))
    return frozenset(pairs)


def check_hussain_axioms(chains: Sequence[HussainChain]) -> dict[str, list]:
    """Violations of (H1)-(H3); empty lists mean the axiom holds.

    H1: two edges sharing a point lie together in exactly one chain.
    H2: two disjoint edges lie together in exactly two chains.
    H3: two chains share exactly two edges, and those are disjoint.
    """
    pts = sorted({p for ch in chains for p in ch.block_points})
    pairs = [frozenset(e) for e in combinations(pts, 2)]
    together = Counter()
    for ch in chains:
        for e1, e2 in combinations(sorted(ch.edges, key=sorted), 2):
            together[frozenset((e1, e2))] += 1
    bad = {"H1": [], "H2": [], "H3": []}
    for e1, e2 in combinations(pairs, 2):
        n = together[frozenset((e1, e2))]
        if e1 & e2:
            if n != 1:
                bad["H1"].append((tuple(sorted(e1)), tuple(sorted(e2)), n))
        elif n != 2:
            bad["H2"].append((tuple(sorted(e1)), tuple(sorted(e2)), n))
    for i, j in combinations(range(len(chains)), 2):
        common = chains[i].edges & chains[j].edges
        if len(common) != 2 or len(frozenset.union(*common) if common else ()) != 4:
            bad["H3"].append((i, j, sorted(tuple(sorted(e)) for e in common)))
    return bad


@dataclass(frozen=True)
class BlockChainReport:
    block_index: int
    histogram: dict
    four_cycle_free: bool
    all_triangles: bool


def block_chain_report(bp: Biplane, block_index: int) -> BlockChainReport:
    types = Counter(ch.cycle_type for ch in hussain_chains(bp, block_index).values())
    return BlockChainReport(
        block_index=block_index,
        histogram=dict(sorted(types.items())),
        four_cycle_free=all(4 not in t for t in types),
        all_triangles=all(set(t) == {3} for t in types),
    )


def chain_structure_report(bp: Biplane) -> list[BlockChainReport]:
    return [block_chain_report(bp, j) for j in range(bp.V)]


def format_cycle_type(t: Sequence[int]) -> str:
    """Descending, dash-joined (e.g. ``5-3-3``)."""
    return "-".join(str(x) for x in sorted(t, reverse=True))


def letter_pairs(block_points: Sequence[int]) -> list[tuple[int, int]]:
    return list(combinations(sorted(block_points), 2))


@dataclass(frozen=True)
class BiplaneArray:
    array: LetterArray
    binary: bool
    row_points: tuple[int, ...]
    col_points: tuple[int, ...]
    letters: tuple[tuple[int, int], ...]


def construct_array(bp: Biplane, block_index: int) -> BiplaneArray:
    """K x (V-K) array: cell (p, q) holds the two neighbours of p in H(q)."""
    if bp.K < 4:
        raise BlockSizeTooSmall("the construction needs block size at least 4")
    chains = hussain_chains(bp, block_index)
    rows = tuple(sorted(bp.design.blocks[block_index]))
    cols = tuple(sorted(chains))
    letters = tuple(letter_pairs(rows))
    lid = {frozenset(pq): i for i, pq in enumerate(letters)}
    grid = tuple(tuple(lid[chains[q].neighbours(p)] for q in cols) for p in rows)
    names = tuple(f"{x}-{y}" for x, y in letters)
    arr = LetterArray(grid, len(letters), names)
    binary = all(len(set(col)) == len(col) for col in zip(*grid)) and all(
        len(set(row)) == len(row) for row in grid)
    return BiplaneArray(arr, binary, rows, cols, letters)


def reconstruct_biplane(block_points: Sequence[int], chains: Sequence[HussainChain]) -> BlockDesign:
    """Rebuild the biplane from one block and its chains.

    Points: the block points (ids 0..K-1 in the given order), then one point
    per chain.  Blocks: the original block, then for each pair of block
    points the pair plus every chain having it as an edge.
    """
    pts = list(block_points)
    K = len(pts)
    for ch in chains:
        if set(ch.block_points) != set(pts):
            raise ChainAxiomViolation("chain is not on the given block")
    bad = check_hussain_axioms(chains)
    for axiom in ("H1", "H2"):
        if bad[axiom]:
            raise ChainAxiomViolation(f"{axiom} fails for {bad[axiom][0]}")
    index = {p: i for i, p in enumerate(pts)}
    blocks = [frozenset(range(K))]
    for x, y in combinations(pts, 2):
        e = frozenset((x, y))
        blocks.append(frozenset({index[x], index[y]} | {K + j for j, ch in enumerate(chains) if e in ch.edges}))
    return BlockDesign(K + len(chains), tuple(blocks))


@dataclass(frozen=True)
class BlockScan:
    report: BlockChainReport
    classification: Classification | None
    binary: bool | None


def scan_block(bp: Biplane, block_index: int) -> BlockScan:
    rep = block_chain_report(bp, block_index)
    if bp.K < 4:
        return BlockScan(rep, None, None)
    built = construct_array(bp, block_index)
    return BlockScan(rep, check_conditions(built.array), built.binary)


@dataclass(frozen=True)
class K6BlockCheck:
    block_index: int
    triangle_pairs_distinct: int
    all_two_step_are_triangle_pairs: bool
    classification: Classification
    derived_biplane: BlockDesign


@dataclass(frozen=True)
class K6Report:
    blocks: tuple[K6BlockCheck, ...]

    @property
    def ok(self) -> bool:
        return all(
            b.triangle_pairs_distinct == 10
            and b.all_two_step_are_triangle_pairs
            and b.classification.kind is Kind.TRIPLE
            for b in self.blocks
        )


def _is_triangle_pair(edges: frozenset, pts: Sequence[int]) -> bool:
    if len(edges) != 6:
        return False
    ch = HussainChain(tuple(pts), edges)
    return ch.cycle_type == (3, 3)


def derived_biplane(built: BiplaneArray) -> BlockDesign:
    """Symmetric design from a K x (V-K) triple array: letters plus a point
    at infinity; blocks are each column's letters and, for each row p, the
    letters containing p together with infinity."""
    arr = built.array
    inf = arr.v
    blocks = [frozenset(col) for col in zip(*arr.grid)]
    for p in built.row_points:
        blocks.append(frozenset({i for i, pq in enumerate(built.letters) if p in pq} | {inf}))
    return BlockDesign(arr.v + 1, tuple(blocks))


def k6_proposition_check(bp: Biplane, blocks: Sequence[int] | None = None) -> K6Report:
    if bp.K != 6:
        raise WrongBlockSize(f"needs K=6, got K={bp.K}")
    out = []
    for j in (range(bp.V) if blocks is None else blocks):
        chains = hussain_chains(bp, j)
        pts = tuple(sorted(bp.design.blocks[j]))
        stars = [two_step_graph(ch) for ch in chains.values()]
        built = construct_array(bp, j)
        out.append(K6BlockCheck(
            block_index=j,
            triangle_pairs_distinct=len(set(stars)),
            all_two_step_are_triangle_pairs=all(_is_triangle_pair(s, pts) for s in stars),
            classification=check_conditions(built.array),
            derived_biplane=derived_biplane(built),
        ))
    return K6Report(tuple(out))


def derived_matches(report: K6Report, reference: BlockDesign, node_budget: int = 200_000) -> list[Iso]:
    return [are_isomorphic(b.derived_biplane, reference, node_budget) for b in report.blocks]
