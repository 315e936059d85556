"""The 36-point design from the Sylvester graph and its 7 x 36 sesqui-array.

Pipeline: Hoffman-Singleton graph -> Sylvester graph on A x B (for a chosen
edge a0-b0) -> block design Theta (36 points, 42 blocks of size 6) ->
array Delta0 -> column-wise repair by a sharply transitive set of six
permutations.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .arrays import LetterArray
from .designs import BlockDesign, ParallelClassPartition
from .errors import InvalidSigmaSet, NotAdjacent


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    adjacency: tuple[frozenset, ...]

    def __post_init__(self):
        adj = tuple(frozenset(int(u) for u in nb) for nb in self.adjacency)
        object.__setattr__(self, "adjacency", adj)
        if len(adj) != self.n_vertices:
            raise ValueError("one neighbour set per vertex is required")
        for x, nb in enumerate(adj):
            if x in nb:
                raise ValueError(f"loop at vertex {x}")
            for y in nb:
                if x not in adj[y]:
                    raise ValueError(f"edge {x}-{y} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj: list[set] = [set() for _ in range(n)]
        for x, y in edges:
            adj[x].add(y)
            adj[y].add(x)
        return cls(n, tuple(frozenset(a) for a in adj))

    def neighbors(self, x: int) -> list[int]:
        return sorted(self.adjacency[x])

    def adjacent(self, x: int, y: int) -> bool:
        return y in self.adjacency[x]

    @property
    def n_edges(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n_vertices) for y in sorted(self.adjacency[x]) if x < y]

    def degrees(self) -> set[int]:
        return {len(nb) for nb in self.adjacency}

    def distances_from(self, s: int) -> list[int]:
        dist = [-1] * self.n_vertices
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def diameter(self) -> float:
        worst = 0
        for s in range(self.n_vertices):
            d = self.distances_from(s)
            if min(d) < 0:
                return float("inf")
            worst = max(worst, max(d))
        return worst

    def girth(self) -> float:
        best = float("inf")
        for s in range(self.n_vertices):
            dist = [-1] * self.n_vertices
            parent = [-1] * self.n_vertices
            dist[s] = 0
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if dist[y] < 0:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        queue.append(y)
                    elif parent[x] != y:
                        best = min(best, dist[x] + dist[y] + 1)
        return best

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {x: i for i, x in enumerate(vertices)}
        return Graph(
            len(vertices),
            tuple(frozenset(index[y] for y in self.adjacency[x] if y in index) for x in vertices),
        )


def hoffman_singleton() -> Graph:
    """Robertson's pentagons-and-pentagrams construction.

    Vertex ``5h + j`` is point j of pentagon P_h, vertex ``25 + 5i + j`` is
    point j of pentagram Q_i; P_h j ~ Q_i (h*i + j).
    """
    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((5 * h + j, 5 * h + (j + 1) % 5))
            edges.append((25 + 5 * h + j, 25 + 5 * h + (j + 2) % 5))
    for h in range(5):
        for i in range(5):
            for j in range(5):
                edges.append((5 * h + j, 25 + 5 * i + (h * i + j) % 5))
    return Graph.from_edges(50, edges)


@dataclass(frozen=True)
class SylvesterLabeling:
    a0: int
    b0: int
    A: tuple[int, ...]
    B: tuple[int, ...]
    point_of: dict

    @property
    def vertex_of(self) -> dict:
        return {pair: x for x, pair in self.point_of.items()}


def point_id(a: int, b: int) -> int:
    """Index of point (a, b) of A x B, row-major, 0-based."""
    return 6 * a + b


def sylvester(hs: Graph, a0: Optional[int] = None, b0: Optional[int] = None):
    """Label the 36 vertices far from edge a0-b0 by A x B.

    Returns the induced Sylvester graph (vertex ``6a + b`` is point (a, b))
    and the labelling.  The default edge is the smallest one.
    """
    if a0 is None or b0 is None:
        a0, b0 = hs.edges()[0]
    if not hs.adjacent(a0, b0):
        raise NotAdjacent(f"{a0} and {b0} are not adjacent")
    A = tuple(sorted(hs.adjacency[a0] - {b0}))
    B = tuple(sorted(hs.adjacency[b0] - {a0}))
    near = {a0, b0, *A, *B}
    point_of = {}
    for x in range(hs.n_vertices):
        if x in near:
            continue
        na = [i for i, a in enumerate(A) if hs.adjacent(x, a)]
        nb = [i for i, b in enumerate(B) if hs.adjacent(x, b)]
        if len(na) != 1 or len(nb) != 1:
            raise ValueError("graph is not Hoffman-Singleton-like around this edge")
        point_of[x] = (na[0], nb[0])
    if len(point_of) != 36:
        raise ValueError("expected 36 vertices at distance 2 from both ends")
    label = SylvesterLabeling(a0, b0, A, B, point_of)
    order = [label.vertex_of[(a, b)] for a in range(6) for b in range(6)]
    return hs.induced(order), label


def theta_design(label: SylvesterLabeling, sigma_graph: Graph) -> BlockDesign:
    """Blocks 0..5 are {(a, b) : a in A} for each b; block 6 + 6a + b is the
    closed Sylvester neighbourhood of (a, b)."""
    blocks = [frozenset(point_id(a, b) for a in range(6)) for b in range(6)]
    for x in range(36):
        blocks.append(frozenset({x}) | sigma_graph.adjacency[x])
    return BlockDesign(36, tuple(blocks))


def theta_resolutions() -> tuple[ParallelClassPartition, ParallelClassPartition]:
    """The two resolutions of Theta: by fixed first and by fixed second coordinate."""
    b_class = tuple(range(6))
    by_a = (b_class,) + tuple(tuple(6 + point_id(a, b) for b in range(6)) for a in range(6))
    by_b = (b_class,) + tuple(tuple(6 + point_id(a, b) for a in range(6)) for b in range(6))
    return ParallelClassPartition(by_a), ParallelClassPartition(by_b)


def letter_names() -> tuple[str, ...]:
    """1-based display names: ``1..6`` for B, ``(a,b)`` for A x B."""
    return tuple(str(b + 1) for b in range(6)) + tuple(
        f"({a + 1},{b + 1})" for a in range(6) for b in range(6)
    )


def delta0(label: SylvesterLabeling, sigma_graph: Graph) -> LetterArray:
    """Row 0 is *, row 1 + a is a; column 6a + b is point (a, b); letter b has
    id b and letter (a, b) has id 6 + 6a + b."""
    grid = [[-1] * 36 for _ in range(7)]
    for a in range(6):
        for b in range(6):
            x = point_id(a, b)
            grid[0][x] = 6 + x
            grid[1 + a][x] = b
            for y in sigma_graph.adjacency[x]:
                # letter (a, b) in row a, column y
                if grid[1 + a][y] != -1:
                    raise ValueError("Sylvester graph has two neighbours with equal first coordinate")
                grid[1 + a][y] = 6 + x
    if any(cell < 0 for row in grid for cell in row):
        raise ValueError("some cells of Delta0 are empty")
    return LetterArray(tuple(map(tuple, grid)), 42, letter_names())


@dataclass(frozen=True)
class SigmaSet:
    """Six permutations of 0..5; ``perms[a][x]`` is the image of x under sigma_a."""

    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if len(perms) != 6 or any(sorted(p) != list(range(6)) for p in perms):
            raise InvalidSigmaSet("need six permutations of 0..5")
        for a, p in enumerate(perms):
            if p[a] != a:
                raise InvalidSigmaSet(f"sigma_{a + 1} does not fix {a + 1}")
        for a1 in range(6):
            for a2 in range(6):
                hits = sum(1 for p in perms if p[a1] == a2)
                if hits != 1:
                    raise InvalidSigmaSet(
                        f"{hits} permutations map {a1 + 1} to {a2 + 1}; set is not sharply transitive")

    def apply(self, a: int, x: int) -> int:
        return self.perms[a][x]


def perm_from_cycles(cycles, n: int = 6, one_based: bool = True) -> tuple[int, ...]:
    img = list(range(n))
    shift = 1 if one_based else 0
    for cyc in cycles:
        cyc = [x - shift for x in cyc]
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


DEFAULT_SIGMA_CYCLES = (
    ((1,), (6, 5, 4, 3, 2)),
    ((2,), (5, 6, 4, 1, 3)),
    ((3,), (6, 2, 5, 1, 4)),
    ((4,), (2, 3, 6, 1, 5)),
    ((5,), (3, 4, 2, 1, 6)),
    ((6,), (4, 5, 3, 1, 2)),
)


def default_sigmas() -> SigmaSet:
    return SigmaSet(tuple(perm_from_cycles(c) for c in DEFAULT_SIGMA_CYCLES))


def repair(d0: LetterArray, sigmas: SigmaSet, label: Optional[SylvesterLabeling] = None) -> LetterArray:
    """Permute each column (a, b) so letter (a', b') moves from row a' to row
    sigma_a(a'); row * and letter b stay put.

    ``label`` is accepted for symmetry with the other pipeline stages; the
    array's id layout already encodes the coordinates.
    """
    grid = [list(row) for row in d0.grid]
    new = [row[:] for row in grid]
    for a in range(6):
        for b in range(6):
            col = point_id(a, b)
            for a2 in range(6):
                if a2 == a:
                    continue
                letter = grid[1 + a2][col]
                new[1 + sigmas.apply(a, a2)][col] = letter
    return LetterArray(tuple(map(tuple, new)), d0.v, d0.letter_names)


@dataclass(frozen=True)
class SylvesterResult:
    hs: Graph
    sigma_graph: Graph
    label: SylvesterLabeling
    theta: BlockDesign
    delta0: LetterArray
    delta: LetterArray


def sylvester_pipeline(a0=None, b0=None, sigmas: Optional[SigmaSet] = None) -> SylvesterResult:
    hs = hoffman_singleton()
    sg, label = sylvester(hs, a0, b0)
    theta = theta_design(label, sg)
    d0 = delta0(label, sg)
    delta = repair(d0, sigmas or default_sigmas(), label)
    return SylvesterResult(hs, sg, label, theta, d0, delta)
