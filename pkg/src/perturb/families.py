"""Seeded generators for the graph families used in the experiments.

Every generator is deterministic given its parameters and seed (numpy
Generator streams), and asserts its family's defining predicate on the
output before returning it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graphs import Graph, connected_components, degeneracy_order
from .rationals import as_fraction

__all__ = [
    "GeneratorSpec",
    "power_of_cycle",
    "power_of_path",
    "kd_gadget",
    "clique_factor",
    "random_regular",
    "random_degenerate",
    "dense_base",
    "sample_gnp",
    "union_graph",
    "complete_graph",
    "build_from_spec",
    "parse_generator_spec",
]

FAMILIES = (
    "power-cycle",
    "power-path",
    "kd-gadget",
    "clique-factor",
    "random-regular",
    "random-degenerate",
    "dense-base",
    "gnp",
)


@dataclass(frozen=True)
class GeneratorSpec:
    """A named family plus its parameters and RNG seed."""

    family: str
    params: tuple = ()  # sorted (key, value) pairs
    seed: int = 0

    def param_dict(self) -> dict:
        return dict(self.params)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def power_of_cycle(n: int, d: int) -> Graph:
    """Cycle on n vertices plus all chords of cyclic distance at most d."""
    if n < 3:
        raise ValueError(f"cycle power needs n >= 3, got {n}")
    if d < 1 or 2 * d >= n - 1:
        raise ValueError(
            f"cycle power needs 1 <= d with 2d <= n-2 (anything denser is K_n), "
            f"got d={d}, n={n}"
        )
    edges = {(min(i, j), max(i, j)) for i in range(n) for k in range(1, d + 1) for j in ((i + k) % n,)}
    g = Graph(n, sorted(edges))
    assert g.m == n * d and all(g.degree(v) == 2 * d for v in range(n))
    return g


def power_of_path(n: int, d: int) -> Graph:
    """Path on n vertices plus all chords of path distance at most d."""
    if n < 2 or d < 1:
        raise ValueError(f"path power needs n >= 2 and d >= 1, got n={n}, d={d}")
    edges = [(i, j) for i in range(n) for j in range(i + 1, min(i + d, n - 1) + 1)]
    return Graph(n, edges)


def clique_factor(n: int, r: int) -> Graph:
    """Disjoint union of n/r copies of K_r."""
    if r < 1 or n % r != 0:
        raise ValueError(f"clique factor needs r >= 1 dividing n, got n={n}, r={r}")
    edges = []
    for base in range(0, n, r):
        edges.extend(
            (base + i, base + j) for i in range(r) for j in range(i + 1, r)
        )
    return Graph(n, edges)


def kd_gadget(n: int, d: int) -> Graph:
    """Chain of n/d copies of K_d joined by matchings; d-regular.

    Clique i is split into A_i (its lowest ceil(d/2) vertices) and B_i (the
    rest).  A_i is matched to A_{i+1} for odd i, B_i to B_{i+1} for even i,
    and the chain is closed by B_t-B_1 when t = n/d is even, A_t-B_1 when t
    is odd (then d is even, so the sides have equal size).  Every clique has
    edge boundary exactly d.
    """
    if d < 3:
        raise ValueError(f"gadget needs d >= 3, got {d}")
    if n % d != 0:
        raise ValueError(f"gadget needs d | n, got n={n}, d={d}")
    t = n // d
    if t < 2:
        raise ValueError(f"gadget needs at least 2 cliques, got n/d = {t}")
    if d % 2 == 1 and t % 2 == 1:
        raise ValueError(
            f"handshake violation: d={d} odd requires an even clique count, got n/d = {t}"
        )
    half = (d + 1) // 2
    a_side = [tuple(range(i * d, i * d + half)) for i in range(t)]
    b_side = [tuple(range(i * d + half, (i + 1) * d)) for i in range(t)]

    edges = list(clique_factor(n, d).edges)
    for i in range(1, t):  # chain matchings, cliques 1-indexed i and i+1
        if i % 2 == 1:
            pairs = zip(a_side[i - 1], a_side[i])
        else:
            pairs = zip(b_side[i - 1], b_side[i])
        edges.extend((min(x, y), max(x, y)) for x, y in pairs)
    closing = zip(b_side[t - 1] if t % 2 == 0 else a_side[t - 1], b_side[0])
    edges.extend((min(x, y), max(x, y)) for x, y in closing)

    g = Graph(n, edges)
    assert all(g.degree(v) == d for v in range(n))
    return g


def random_regular(n: int, d: int, seed: int, max_attempts=None) -> Graph:
    """Uniform simple d-regular graph by pairing-model rejection sampling.

    A uniform perfect matching on d half-edges per vertex is resampled from
    scratch whenever it produces a loop or a repeated edge, which keeps the
    conditional distribution uniform.  The retry cap scales like e^(d^2)
    because the rejection rate is roughly e^((d^2-1)/4) independent of n.
    """
    if d < 0 or d >= n:
        raise ValueError(f"need 0 <= d < n, got d={d}, n={n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"handshake violation: n*d = {n * d} is odd")
    if max_attempts is None:
        max_attempts = 200 * math.ceil(math.exp(min(d * d, 40)))
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_attempts):
        perm = rng.permutation(stubs)
        us, vs = perm[0::2], perm[1::2]
        if np.any(us == vs):
            continue
        lo, hi = np.minimum(us, vs), np.maximum(us, vs)
        keys = lo.astype(np.int64) * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        g = Graph(n, list(zip(lo.tolist(), hi.tolist())))
        assert all(g.degree(v) == d for v in range(n))
        return g
    raise RuntimeError(
        f"pairing model failed to produce a simple graph in {max_attempts} attempts"
    )


def random_degenerate(n: int, d: int, delta: int, seed: int) -> Graph:
    """Random graph with degeneracy <= d and maximum degree <= delta.

    Vertices arrive in index order; vertex i picks k ~ Uniform{0..d} earlier
    neighbors, uniformly among those whose degree is still below delta
    (fewer if the candidate pool is short).
    """
    if d < 0 or delta < d:
        raise ValueError(f"need delta >= d >= 0, got d={d}, delta={delta}")
    rng = np.random.default_rng(seed)
    deg = [0] * n
    edges = []
    for i in range(1, n):
        k = int(rng.integers(0, d + 1))
        if k == 0:
            continue
        candidates = [j for j in range(i) if deg[j] < delta]
        k = min(k, len(candidates), delta)
        if k == 0:
            continue
        picks = rng.choice(len(candidates), size=k, replace=False)
        for idx in sorted(int(p) for p in picks):
            j = candidates[idx]
            edges.append((j, i))
            deg[j] += 1
            deg[i] += 1
    g = Graph(n, edges)
    assert g.max_degree() <= delta
    assert degeneracy_order(g)[1] <= d
    return g


def dense_base(n: int, variant: str, eps, seed: int = 0) -> Graph:
    """Deterministic-or-seeded base graph with at least eps*n^2 edges.

    Variants: half-clique (K_ceil(n/2) plus isolated vertices), complete,
    er (G(n, 2.5*eps) resampled until the edge bound holds).  If a variant
    cannot meet the bound this raises instead of scaling silently.
    """
    eps = as_fraction(eps)
    need = eps * n * n
    if variant == "half-clique":
        if eps > Fraction(1, 8):
            raise ValueError(f"half-clique variant requires eps <= 1/8, got {eps}")
        k = (n + 1) // 2
        g = Graph(n, [(u, v) for u in range(k) for v in range(u + 1, k)])
    elif variant == "complete":
        g = complete_graph(n)
    elif variant == "er":
        p = min(1.0, float(Fraction(5, 2) * eps))
        g = None
        for attempt in range(1000):
            cand = sample_gnp(n, p, seed + attempt)
            if cand.m >= need:
                g = cand
                break
        if g is None:
            raise ValueError(f"er variant failed to reach {need} edges at p={p}")
    else:
        raise ValueError(f"unknown dense-base variant {variant!r}")
    if g.m < need:
        raise ValueError(
            f"variant {variant!r} yields {g.m} edges, below the required {need}"
        )
    return g


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """G(n, p): every vertex pair appears independently with probability p."""
    if not (0 <= p <= 1):
        raise ValueError(f"need 0 <= p <= 1, got {p}")
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < p
    return Graph(n, list(zip(iu[mask].tolist(), iv[mask].tolist())))


def union_graph(g1: Graph, g2: Graph) -> Graph:
    """Edge union of two graphs on the same vertex set."""
    if g1.n != g2.n:
        raise ValueError(f"vertex count mismatch: {g1.n} vs {g2.n}")
    return Graph(g1.n, sorted(set(g1.edges) | set(g2.edges)))


def parse_generator_spec(text: str) -> GeneratorSpec:
    """Parse an inline spec like ``power-cycle:n=12,d=2`` or ``gnp:n=20,p=0.3,seed=7``."""
    family, _, rest = text.partition(":")
    family = family.strip()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    params = {}
    seed = 0
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            value = value.strip()
            if not key or not value:
                raise ValueError(f"bad parameter {item!r} in spec {text!r}")
            if key == "seed":
                seed = int(value)
            elif key in ("variant",):
                params[key] = value
            elif key in ("eps", "p"):
                params[key] = value  # kept as string, coerced per family
            else:
                params[key] = int(value)
    return GeneratorSpec(family=family, params=tuple(sorted(params.items())), seed=seed)


def build_from_spec(spec: GeneratorSpec) -> Graph:
    p = spec.param_dict()
    family = spec.family
    if family == "power-cycle":
        return power_of_cycle(p["n"], p["d"])
    if family == "power-path":
        return power_of_path(p["n"], p["d"])
    if family == "kd-gadget":
        return kd_gadget(p["n"], p["d"])
    if family == "clique-factor":
        return clique_factor(p["n"], p["r"])
    if family == "random-regular":
        return random_regular(p["n"], p["d"], spec.seed)
    if family == "random-degenerate":
        return random_degenerate(p["n"], p["d"], p.get("delta", p["d"]), spec.seed)
    if family == "dense-base":
        return dense_base(p["n"], p.get("variant", "half-clique"), p["eps"], spec.seed)
    if family == "gnp":
        return sample_gnp(p["n"], float(p["p"]), spec.seed)
    raise ValueError(f"unknown family {family!r}")
