"""Immutable simple graphs, acyclic orientations, and BFS level structures.

Vertices are the integers 0..n-1.  Edges are stored as sorted (u, v) pairs
with u < v, and every iteration order is deterministic so that seeded
procedures built on top are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import Iterable, Mapping, Sequence

# A vertex set is a sorted, duplicate-free tuple of vertex ids.
VertexSet = tuple

__all__ = [
    "Graph",
    "Orientation",
    "LevelStructure",
    "VertexSet",
    "as_vertex_set",
    "induced_subgraph",
    "edge_boundary",
    "degeneracy_order",
    "orient_by_order",
    "level_orientation",
    "out_ball",
    "connected_components",
]


class Graph:
    """Immutable simple undirected graph.

    Attributes:
        n: number of vertices.
        edges: sorted tuple of (u, v) pairs, u < v, no duplicates.
        adj: per-vertex sorted neighbor tuples, consistent with ``edges``.
    """

    __slots__ = ("n", "edges", "adj", "_edge_set")

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        normalized = []
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u and v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            normalized.append((u, v))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        self.n = n
        self.edges = tuple(normalized)
        self._edge_set = frozenset(self.edges)
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        self.adj = tuple(tuple(sorted(ns)) for ns in neighbors)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> tuple:
        return tuple(len(ns) for ns in self.adj)

    def max_degree(self) -> int:
        return max((len(ns) for ns in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    def neighbors(self, v: int) -> tuple:
        return self.adj[v]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph) and self.n == other.n and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Orientation:
    """Acyclic orientation of a :class:`Graph`: exactly one arc per edge."""

    __slots__ = ("base", "arcs", "out_adj", "in_adj")

    def __init__(self, base: Graph, arcs: Iterable[Sequence[int]]):
        arc_list = sorted(tuple(a) for a in arcs)
        seen = set()
        for u, v in arc_list:
            if not base.has_edge(u, v):
                raise ValueError(f"arc ({u}, {v}) is not an edge of the base graph")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"edge {key} oriented twice")
            seen.add(key)
        if len(arc_list) != base.m:
            raise ValueError(f"{base.m - len(arc_list)} edges left unoriented")
        self.base = base
        self.arcs = tuple(arc_list)
        outs: list[list[int]] = [[] for _ in range(base.n)]
        ins: list[list[int]] = [[] for _ in range(base.n)]
        for u, v in self.arcs:
            outs[u].append(v)
            ins[v].append(u)
        self.out_adj = tuple(tuple(sorted(ns)) for ns in outs)
        self.in_adj = tuple(tuple(sorted(ns)) for ns in ins)
        self.topological_order()  # acyclicity is part of the invariant

    @property
    def n(self) -> int:
        return self.base.n

    def out_neighbors(self, v: int) -> tuple:
        return self.out_adj[v]

    def in_neighbors(self, v: int) -> tuple:
        return self.in_adj[v]

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def max_out_degree(self) -> int:
        return max((len(ns) for ns in self.out_adj), default=0)

    def topological_order(self) -> tuple:
        """Kahn's algorithm; raises ValueError if the digraph has a cycle."""
        indeg = [len(self.in_adj[v]) for v in range(self.n)]
        queue = deque(v for v in range(self.n) if indeg[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for w in self.out_adj[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if len(order) != self.n:
            raise ValueError("orientation contains a directed cycle")
        return tuple(order)

    def __repr__(self) -> str:
        return f"Orientation(n={self.n}, arcs={len(self.arcs)})"


@dataclass(frozen=True)
class LevelStructure:
    """BFS levels of a spanning forest, one root per connected component.

    ``levels[v]`` is the tree distance from v to the root of its component;
    levels range over 0..level_count-1.
    """

    components: tuple
    roots: tuple
    levels: tuple
    level_count: int
    forest_edges: tuple

    def level_sets(self) -> tuple:
        sets: list[list[int]] = [[] for _ in range(self.level_count)]
        for v, lvl in enumerate(self.levels):
            sets[lvl].append(v)
        return tuple(tuple(s) for s in sets)


def as_vertex_set(vertices: Iterable[int], n: int) -> VertexSet:
    """Validate and normalize vertex ids into a sorted duplicate-free tuple."""
    vs = sorted(set(vertices))
    if vs and not (0 <= vs[0] and vs[-1] < n):
        raise ValueError(f"vertex ids must lie in 0..{n - 1}")
    return tuple(vs)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict]:
    """Subgraph induced by ``s`` plus the relabeling map old id -> new id."""
    vs = as_vertex_set(s, g.n)
    relabel = {old: new for new, old in enumerate(vs)}
    members = set(vs)
    edges = [
        (relabel[u], relabel[v]) for u, v in g.edges if u in members and v in members
    ]
    return Graph(len(vs), edges), relabel


def edge_boundary(g: Graph, x: Iterable[int]) -> tuple[int, tuple]:
    """Edges of g with exactly one endpoint in x, as (count, sorted edge tuple)."""
    xs = set(as_vertex_set(x, g.n))
    out = []
    for v in xs:
        for u in g.adj[v]:
            if u not in xs:
                out.append((min(u, v), max(u, v)))
    out.sort()
    return len(out), tuple(out)


def degeneracy_order(g: Graph) -> tuple[tuple, int]:
    """Min-degree peeling order, reversed, plus the degeneracy value.

    In the returned ordering every vertex has at most ``degeneracy`` neighbors
    earlier in the sequence.  Ties are broken by smallest vertex id.
    """
    deg = list(g.degrees())
    removed = [False] * g.n
    heap: list[tuple[int, int]] = []
    for v in range(g.n):
        heappush(heap, (deg[v], v))
    peel = []
    degeneracy = 0
    while heap:
        d, v = heappop(heap)
        if removed[v] or d != deg[v]:
            continue  # stale heap entry
        removed[v] = True
        peel.append(v)
        degeneracy = max(degeneracy, d)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heappush(heap, (deg[u], u))
    return tuple(reversed(peel)), degeneracy


def orient_by_order(g: Graph, order: Sequence[int]) -> Orientation:
    """Orient every edge from the later position in ``order`` to the earlier."""
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertices")
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    arcs = [(v, u) if pos[u] < pos[v] else (u, v) for u, v in g.edges]
    return Orientation(g, arcs)


def connected_components(g: Graph) -> tuple:
    """Connected components as sorted tuples, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


def level_orientation(g: Graph, seed=None) -> tuple[Orientation, LevelStructure]:
    """Spanning-forest BFS levels with the induced acyclic orientation.

    One root per component: the lowest-index vertex by default, or a seeded
    uniform choice when ``seed`` is given.  Edges between levels point from
    the higher level to the lower; edges within a level point from the higher
    vertex index to the lower, which keeps the result acyclic.
    """
    comps = connected_components(g)
    if seed is None:
        roots = tuple(c[0] for c in comps)
    else:
        import numpy as np

        rng = np.random.default_rng(seed)
        roots = tuple(c[int(rng.integers(len(c)))] for c in comps)

    levels = [-1] * g.n
    forest = []
    for root in roots:
        levels[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if levels[u] < 0:
                    levels[u] = levels[v] + 1
                    forest.append((min(u, v), max(u, v)))
                    queue.append(u)
    level_count = max(levels) + 1 if levels else 0

    arcs = []
    for u, v in g.edges:
        lu, lv = levels[u], levels[v]
        if lu == lv:
            arcs.append((max(u, v), min(u, v)))
        elif lu > lv:
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    structure = LevelStructure(
        components=comps,
        roots=roots,
        levels=tuple(levels),
        level_count=level_count,
        forest_edges=tuple(sorted(forest)),
    )
    return Orientation(g, arcs), structure


def out_ball(d: Orientation, v: int, radius: int) -> VertexSet:
    """Vertices reachable from v along out-arcs by paths of length <= radius."""
    if not (0 <= v < d.n):
        raise ValueError(f"vertex {v} out of range")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    seen = {v}
    frontier = [v]
    for _ in range(radius):
        if not frontier:
            break
        nxt = []
        for w in frontier:
            for u in d.out_adj[w]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return tuple(sorted(seen))
