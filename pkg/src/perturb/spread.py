"""Randomized star embeddings into a dense host, empirical vertex-spread
estimation, and the exact/heuristic spanning embedders.

The star sampler places in-star roots uniformly into the host's high-degree
vertices and each star's sources into the chosen root image's neighborhood,
then spreads the remaining vertices uniformly over what is left.  Every
structured draw keeps a candidate pool of at least eps*n/4, which is what
bounds the single-assignment probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import backend
from .families import union_graph
from .graphs import Graph, degeneracy_order
from .rationals import as_fraction
from .reduction import StarSelection
from .stats import wilson_interval

__all__ = [
    "Embedding",
    "HighDegreeSet",
    "SpreadEstimate",
    "EmbedResult",
    "SpreadPoolError",
    "high_degree_set",
    "sample_spread_embedding",
    "estimate_vertex_spread",
    "exact_spanning_embed",
    "two_phase_embed",
    "uniform_injection",
]

ROOT, LEAF, FREE = "star-root", "star-leaf", "free"


class SpreadPoolError(RuntimeError):
    """A structured draw's candidate pool fell below eps*n/4; names the step."""


@dataclass(frozen=True)
class HighDegreeSet:
    """Host vertices of degree at least eps*n/2."""

    threshold: Fraction
    members: tuple


@dataclass(frozen=True)
class Embedding:
    """Injective vertex map phi with a placement tag per vertex."""

    phi: tuple
    tags: tuple

    def __post_init__(self):
        if len(set(self.phi)) != len(self.phi):
            raise ValueError("embedding is not injective")


@dataclass(frozen=True)
class EmbedResult:
    status: str  # found | none | timeout | not-found
    embedding: Optional[Embedding] = None
    restarts_used: int = 0


@dataclass(frozen=True)
class SpreadEstimate:
    """Empirical falsifier for q-vertex-spread at s = 1 and s = 2.

    The definition quantifies over every s, so large maxima refute a claimed
    bound while small ones only support it.  Upper confidence limits are
    Wilson bounds at the stored z.
    """

    samples: int
    s1_max: float
    s1_argpair: tuple
    s1_upper: float
    s2_max: Optional[float]
    s2_argquad: Optional[tuple]
    s2_upper: Optional[float]
    quad_count: int
    z: float
    target_q: Optional[float]


def high_degree_set(g: Graph, eps) -> HighDegreeSet:
    """Vertices of degree >= eps*n/2; requires e(g) >= eps*n^2, which forces
    at least eps*n members."""
    eps = as_fraction(eps)
    n = g.n
    if g.m < eps * n * n:
        raise ValueError(
            f"host too sparse: {g.m} edges < eps*n^2 = {eps * n * n}"
        )
    threshold = eps * n / 2
    members = tuple(v for v in range(n) if g.degree(v) >= threshold)
    assert len(members) >= eps * n
    return HighDegreeSet(threshold=threshold, members=members)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _place_stars(stars: StarSelection, g: Graph, eps: Fraction, rng) -> dict:
    """Place star roots into the high-degree set and leaves into their root
    image's neighborhood.  Returns the partial map; raises SpreadPoolError
    when any candidate pool drops below eps*n/4."""
    n = g.n
    min_pool = eps * n / 4
    high = high_degree_set(g, eps)
    grouped = stars.stars()
    placed: dict = {}
    used: set = set()
    for root in stars.x:
        pool = [v for v in high.members if v not in used]
        if len(pool) < min_pool:
            raise SpreadPoolError(
                f"root draw for {root}: pool {len(pool)} below eps*n/4 = {min_pool}"
            )
        image = pool[int(rng.integers(len(pool)))]
        placed[root] = image
        used.add(image)
        for leaf in grouped.get(root, ()):
            pool = [v for v in g.adj[image] if v not in used]
            if len(pool) < min_pool:
                raise SpreadPoolError(
                    f"leaf draw for {leaf} (root {root}): pool {len(pool)} "
                    f"below eps*n/4 = {min_pool}"
                )
            leaf_image = pool[int(rng.integers(len(pool)))]
            placed[leaf] = leaf_image
            used.add(leaf_image)
    return placed


def sample_spread_embedding(h: Graph, stars: StarSelection, g: Graph, eps, seed) -> Embedding:
    """One draw from the star-then-uniform embedding distribution.

    Roots and leaves go into g as in _place_stars; every other vertex of h
    is mapped uniformly onto the remaining host vertices.  Every chosen star
    arc is guaranteed (and checked) to land on an edge of g.
    """
    if h.n != g.n:
        raise ValueError(f"vertex count mismatch: h has {h.n}, host has {g.n}")
    eps = as_fraction(eps)
    rng = _rng(seed)
    placed = _place_stars(stars, g, eps, rng)

    phi = [-1] * h.n
    tags = [FREE] * h.n
    leaf_set = {u for u, _ in stars.arcs}
    for x, y in placed.items():
        phi[x] = y
        tags[x] = LEAF if x in leaf_set else ROOT
    free = [x for x in range(h.n) if phi[x] < 0]
    remaining = np.array(
        sorted(set(range(g.n)) - set(placed.values())), dtype=np.int64
    )
    images = rng.permutation(remaining)
    for x, y in zip(free, images):
        phi[x] = int(y)

    emb = Embedding(phi=tuple(phi), tags=tuple(tags))
    for u, q in stars.arcs:
        assert g.has_edge(emb.phi[u], emb.phi[q])
    return emb


def uniform_injection(n_domain: int, n_range: int, rng) -> tuple:
    """Uniformly random injective map, the spread baseline."""
    if n_domain > n_range:
        raise ValueError("no injection exists")
    return tuple(int(v) for v in rng.permutation(n_range)[:n_domain])


def estimate_vertex_spread(
    sampler: Callable,
    n_domain: int,
    n_range: int,
    samples: int,
    s_max: int = 2,
    seed: int = 0,
    quad_count: int = 1000,
    z: float = 3.0,
    target_q=None,
    min_samples: int = 10**4,
) -> SpreadEstimate:
    """Monte Carlo maxima of P[phi(x)=y] and P[phi(x1)=y1, phi(x2)=y2].

    ``sampler(rng)`` must return an injective map of length n_domain into
    range(n_range).  Sampling is chunked with spawned child streams so a
    sharded implementation would merge to identical counts.
    """
    if samples < min_samples:
        raise ValueError(f"need at least {min_samples} samples, got {samples}")
    if not 1 <= s_max <= 2:
        raise ValueError("only s in {1, 2} is estimated")
    master = np.random.default_rng(seed)
    chunk = 10**4
    streams = master.spawn((samples + chunk - 1) // chunk)
    rows = np.empty((samples, n_domain), dtype=np.int32)
    at = 0
    for stream in streams:
        take = min(chunk, samples - at)
        for i in range(take):
            rows[at + i] = sampler(stream)
        at += take

    counts = np.zeros((n_domain, n_range), dtype=np.int64)
    cols = np.arange(n_domain)
    for i in range(samples):
        counts[cols, rows[i]] += 1
    flat = int(np.argmax(counts))
    x1, y1 = divmod(flat, n_range)
    s1_hits = int(counts[x1, y1])
    s1_max = s1_hits / samples
    s1_upper = wilson_interval(s1_hits, samples, z)[2]

    s2_max = s2_argquad = s2_upper = None
    if s_max >= 2:
        quad_rng = master.spawn(1)[0]
        best_hits, best_quad = -1, None
        for _ in range(quad_count):
            xa, xb = quad_rng.choice(n_domain, size=2, replace=False)
            ya, yb = quad_rng.choice(n_range, size=2, replace=False)
            hits = int(np.count_nonzero((rows[:, xa] == ya) & (rows[:, xb] == yb)))
            if hits > best_hits:
                best_hits = hits
                best_quad = (int(xa), int(xb), int(ya), int(yb))
        s2_max = best_hits / samples
        s2_argquad = best_quad
        s2_upper = wilson_interval(best_hits, samples, z)[2]

    return SpreadEstimate(
        samples=samples,
        s1_max=s1_max,
        s1_argpair=(x1, y1),
        s1_upper=s1_upper,
        s2_max=s2_max,
        s2_argquad=s2_argquad,
        s2_upper=s2_upper,
        quad_count=quad_count if s_max >= 2 else 0,
        z=z,
        target_q=None if target_q is None else float(target_q),
    )


def _adjacency_bits(g: Graph) -> list:
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def exact_spanning_embed(h: Graph, host: Graph, time_budget: float = 10.0,
                         node_budget: int = 0) -> EmbedResult:
    """Exhaustive backtracking for a spanning copy of h in host.

    Vertices are assigned in descending-degree order; a host vertex is a
    candidate only if its degree suffices and it is adjacent to the images
    of all previously placed neighbors.  "none" is exhaustive; "timeout"
    (clock or node budget) is reported separately.
    """
    if h.n != host.n:
        raise ValueError(f"vertex count mismatch: {h.n} vs {host.n}")
    if h.n == 0:
        return EmbedResult(status="found", embedding=Embedding((), ()))
    if h.m > host.m:
        return EmbedResult(status="none")
    hdeg = h.degrees()
    sdeg = host.degrees()
    if sorted(hdeg, reverse=True) > sorted(sdeg, reverse=True):
        return EmbedResult(status="none")  # no degree-compatible bijection

    deg_ok = [
        sum(1 << y for y in range(host.n) if sdeg[y] >= hdeg[x]) for x in range(h.n)
    ]
    order = sorted(range(h.n), key=lambda x: (-hdeg[x], x))
    status, mapping = backend.spanning_embed_search(
        _adjacency_bits(h), _adjacency_bits(host), deg_ok, order,
        time_budget, node_budget,
    )
    if status == backend.EMBED_FOUND:
        emb = Embedding(phi=tuple(mapping), tags=tuple(FREE for _ in mapping))
        for u, v in h.edges:
            assert host.has_edge(emb.phi[u], emb.phi[v])
        return EmbedResult(status="found", embedding=emb)
    if status == backend.EMBED_NONE:
        return EmbedResult(status="none")
    return EmbedResult(status="timeout")


def two_phase_embed(
    h: Graph,
    stars: StarSelection,
    g: Graph,
    r: Graph,
    eps,
    seed,
    restarts: int = 20,
    node_budget: int = 200_000,
) -> EmbedResult:
    """Heuristic containment of h in g union r: star arcs into g first, the
    rest by randomized backtracking over the union.

    Phase 1 redraws on each restart; phase 2 fills the remaining vertices
    in degeneracy order (so each step faces few placed neighbors) with
    candidate images shuffled per restart.  A returned embedding is verified
    edge by edge; "not-found" carries no certificate of absence.
    """
    if h.n != g.n or h.n != r.n:
        raise ValueError("h, g, r must share a vertex count")
    eps = as_fraction(eps)
    rng = _rng(seed)
    union = union_graph(g, r)
    union_adj = [set(ns) for ns in union.adj]
    star_edges = set(stars.edges())
    order_full, _ = degeneracy_order(h)

    for attempt in range(1, restarts + 1):
        placed = _place_stars(stars, g, eps, rng)
        ok = True
        for u, v in h.edges:
            if (u, v) in star_edges:
                continue
            if u in placed and v in placed and placed[v] not in union_adj[placed[u]]:
                ok = False
                break
        if ok and _phase2_fill(h, placed, union_adj, order_full, rng, node_budget):
            phi = [placed[x] for x in range(h.n)]
            leaf_set = {u for u, _ in stars.arcs}
            tags = [
                LEAF if x in leaf_set else (ROOT if x in set(stars.x) else FREE)
                for x in range(h.n)
            ]
            emb = Embedding(phi=tuple(phi), tags=tuple(tags))
            for u, v in h.edges:
                if (u, v) in star_edges:
                    assert g.has_edge(emb.phi[u], emb.phi[v])
                else:
                    assert union.has_edge(emb.phi[u], emb.phi[v])
            return EmbedResult(status="found", embedding=emb, restarts_used=attempt)
    return EmbedResult(status="not-found", restarts_used=restarts)


def _phase2_fill(h, placed, union_adj, order_full, rng, node_budget) -> bool:
    """Backtracking completion of a partial embedding; mutates ``placed``
    in-place on success."""
    order = [x for x in order_full if x not in placed]
    if not order:
        return True
    n_host = len(union_adj)
    used = set(placed.values())
    phi = dict(placed)

    def candidates(x):
        pool = None
        for y in h.adj[x]:
            if y in phi:
                images = union_adj[phi[y]]
                pool = images.copy() if pool is None else pool & images
        if pool is None:
            pool = set(range(n_host))
        pool -= used
        arr = sorted(pool)
        perm = rng.permutation(len(arr))
        return [arr[int(i)] for i in perm]

    stack = [candidates(order[0])]
    nodes = 0
    while stack:
        depth = len(stack) - 1
        x = order[depth]
        cands = stack[-1]
        if not cands:
            stack.pop()
            if depth > 0:
                prev = order[depth - 1]
                used.discard(phi.pop(prev))
            continue
        image = cands.pop()
        nodes += 1
        if node_budget and nodes > node_budget:
            return False
        phi[x] = image
        used.add(image)
        if depth + 1 == len(order):
            placed.update(phi)
            return True
        stack.append(candidates(order[depth + 1]))
    return False
