"""Star-deletion reduction: hit the deep out-balls with a small vertex set,
prune it to an independent set, delete one chosen arc per in-star source,
and certify the resulting 1-density drop.  Also the edge-expansion checker
used for regular hosts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .density import induced_edge_count, m1_exact
from .enumeration import EnumerationBudgetExceeded, connected_vertex_sets
from .graphs import (
    Graph,
    Orientation,
    as_vertex_set,
    degeneracy_order,
    level_orientation,
    orient_by_order,
    out_ball,
)
from .rationals import as_fraction, fraction_str

__all__ = [
    "ReachableCore",
    "StarSelection",
    "PipelineReport",
    "ExpansionReport",
    "HittingSetError",
    "HittingSetSample",
    "reachable_core",
    "sample_hitting_set",
    "prune_to_independent",
    "select_in_stars",
    "run_reduction",
    "expansion_check",
    "auto_radius",
]


@dataclass(frozen=True)
class ReachableCore:
    """Vertices whose out-ball of the given radius holds at least radius/2
    vertices, together with all ball sizes."""

    radius: int
    core: tuple
    ball_sizes: tuple


@dataclass(frozen=True)
class StarSelection:
    """One chosen arc per source vertex, each pointing into the independent
    set x; grouped by target they form vertex-disjoint in-stars."""

    x: tuple
    arcs: tuple  # (source, root) pairs, sorted

    def __post_init__(self):
        sources = [u for u, _ in self.arcs]
        if len(set(sources)) != len(sources):
            raise ValueError("a source vertex carries more than one chosen arc")
        roots = {q for _, q in self.arcs}
        if not roots <= set(self.x):
            raise ValueError("chosen arcs must point into x")

    def stars(self) -> dict:
        grouped: dict = {q: [] for q in self.x}
        for u, q in self.arcs:
            grouped[q].append(u)
        return {q: tuple(sorted(us)) for q, us in grouped.items()}

    def star_vertices(self) -> tuple:
        return tuple(sorted({v for arc in self.arcs for v in arc}))

    def edges(self) -> tuple:
        return tuple(sorted((min(u, q), max(u, q)) for u, q in self.arcs))


class HittingSetError(RuntimeError):
    """All resampling attempts violated the size bounds; carries diagnostics."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class HittingSetSample:
    """A successful hitting-set draw: x1 = sampled union augmented."""

    x1: tuple
    sampled: tuple
    augmented: tuple
    retries: int
    missed: int  # core vertices not hit by the raw sample


def auto_radius(gamma) -> int:
    """The analysis-scale ball radius 10*ln(20/gamma)/gamma, rounded up."""
    gamma = float(as_fraction(gamma))
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    return math.ceil(10 * math.log(20 / gamma) / gamma)


def reachable_core(d: Orientation, radius: int) -> ReachableCore:
    """Truncated BFS along out-arcs from every vertex; core membership is
    2*|ball| >= radius."""
    if radius < 2:
        raise ValueError(f"radius must be at least 2, got {radius}")
    sizes = tuple(len(out_ball(d, v, radius)) for v in range(d.n))
    core = tuple(v for v in range(d.n) if 2 * sizes[v] >= radius)
    return ReachableCore(radius=radius, core=core, ball_sizes=sizes)


def sample_hitting_set(
    d: Orientation,
    core: ReachableCore,
    gamma,
    seed: int,
    max_retries: int = 20,
) -> HittingSetSample:
    """Sample a vertex set hitting every core vertex's punctured out-ball.

    Each vertex enters the raw sample independently with probability
    gamma/4.  A draw is kept when |sample| <= 3*gamma*n/8, the number of
    missed core vertices is within twice its expectation bound, and the
    final size bound |x1| <= gamma*n/2 holds; otherwise it is redrawn, up
    to ``max_retries`` times.

    Missed core vertices are repaired in ascending order: a vertex whose
    punctured ball is already hit by the growing set is skipped, otherwise
    the maximum-index ball vertex is added.  Adding the far end of the ball
    lets one repair vertex cover a run of nearby misses, which keeps the
    augmentation within the size budget at practical radii.
    """
    gamma = as_fraction(gamma)
    n = d.n
    balls = {}
    for v in core.core:
        ball = set(out_ball(d, v, core.radius))
        ball.discard(v)
        if not ball:
            raise ValueError(
                f"core vertex {v} has a singleton ball; no repair vertex exists"
            )
        balls[v] = ball

    rng = np.random.default_rng(seed)
    miss_bound = 2 * math.exp(-float(gamma) * core.radius / 10) * len(core.core)
    last = {}
    for attempt in range(1, max_retries + 1):
        mask = rng.random(n) < float(gamma) / 4
        sampled = {v for v in range(n) if mask[v]}
        q1 = 8 * len(sampled) * gamma.denominator <= 3 * gamma.numerator * n
        missed = [v for v in core.core if not (balls[v] & sampled)]
        q2 = len(missed) <= miss_bound

        hit = set(sampled)
        augmented = []
        for v in missed:
            if balls[v] & hit:
                continue
            u = max(balls[v])
            augmented.append(u)
            hit.add(u)
        x1 = sorted(sampled | set(augmented))
        size_ok = 2 * len(x1) * gamma.denominator <= gamma.numerator * n
        last = {
            "attempt": attempt,
            "sampled": len(sampled),
            "q1_limit": f"3*gamma*n/8 = {fraction_str(3 * gamma * n / 8)}",
            "missed": len(missed),
            "q2_limit": miss_bound,
            "x1": len(x1),
            "x1_limit": f"gamma*n/2 = {fraction_str(gamma * n / 2)}",
        }
        if q1 and q2 and size_ok:
            for v in core.core:  # hitting property is forced by construction
                assert balls[v] & set(x1)
            return HittingSetSample(
                x1=tuple(x1),
                sampled=tuple(sorted(sampled)),
                augmented=tuple(sorted(augmented)),
                retries=attempt - 1,
                missed=len(missed),
            )
    raise HittingSetError(
        f"hitting-set sampling failed {max_retries} times; last attempt: {last}",
        diagnostics=last,
    )


def prune_to_independent(d: Orientation, x1) -> tuple:
    """Shrink x1 to an independent set by repeatedly deleting in-neighbors
    of the current sinks.

    In each round the sinks are the members with no out-arc inside the
    current set; their in-neighbors (taken in the full orientation, minus
    the sinks themselves) are removed.  Sinks persist to the end, so every
    deleted vertex keeps an out-arc to a retained member.
    """
    x = set(as_vertex_set(x1, d.n))
    for _ in range(len(x) + 1):
        sinks = {v for v in x if not any(w in x for w in d.out_adj[v])}
        if sinks == x:
            break
        delete = set()
        for b in sinks:
            for u in d.in_adj[b]:
                if u in x and u not in sinks:
                    delete.add(u)
        assert delete, "non-independent set must lose a vertex"
        x -= delete
    result = tuple(sorted(x))
    assert not _has_internal_edge(d.base, result)
    return result


def _has_internal_edge(g: Graph, vertices) -> bool:
    members = set(vertices)
    return any(u in members and v in members for u, v in g.edges)


def select_in_stars(d: Orientation, x) -> StarSelection:
    """For every vertex with an out-arc into x, keep exactly one such arc
    (toward its minimum-index target)."""
    xs = set(as_vertex_set(x, d.n))
    if _has_internal_edge(d.base, xs):
        raise ValueError("x is not independent in the underlying graph")
    arcs = []
    for u in range(d.n):
        if u in xs:
            continue
        targets = [q for q in d.out_adj[u] if q in xs]
        if targets:
            arcs.append((u, min(targets)))
    selection = StarSelection(x=tuple(sorted(xs)), arcs=tuple(arcs))
    assert len(selection.arcs) <= d.base.max_degree() * max(len(xs), 1)
    return selection


@dataclass(frozen=True)
class PipelineReport:
    """Everything one reduction run produced, with exact densities."""

    rule: str
    radius_requested: str
    radius: int
    gamma: Fraction
    d: Fraction
    eps_prime: Fraction
    seed: int
    retries: int
    n: int
    m: int
    core_size: int
    sampled_size: int
    augmented_size: int
    x1_size: int
    x_size: int
    star_arc_count: int
    x: tuple
    star_arcs: tuple
    m1_before: Optional[Fraction]
    m1_after: Optional[Fraction]
    flags: tuple  # sorted (name, bool) pairs
    verdict: str
    error: Optional[str] = None

    def flag(self, name: str) -> bool:
        return dict(self.flags)[name]

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "radius_requested": self.radius_requested,
            "radius": self.radius,
            "gamma": fraction_str(self.gamma),
            "d": fraction_str(self.d),
            "eps_prime": fraction_str(self.eps_prime),
            "seed": self.seed,
            "retries": self.retries,
            "n": self.n,
            "m": self.m,
            "core_size": self.core_size,
            "sampled_size": self.sampled_size,
            "augmented_size": self.augmented_size,
            "x1_size": self.x1_size,
            "x_size": self.x_size,
            "star_arc_count": self.star_arc_count,
            "x": list(self.x),
            "star_arcs": [list(a) for a in self.star_arcs],
            "m1_before": fraction_str(self.m1_before),
            "m1_after": fraction_str(self.m1_after),
            "flags": {k: v for k, v in self.flags},
            "verdict": self.verdict,
            "error": self.error,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def run_reduction(
    h: Graph,
    orient_rule: str,
    radius,
    gamma,
    d,
    eps_prime=0,
    seed: int = 0,
    max_retries: int = 20,
) -> PipelineReport:
    """Orient h, sample and prune the hitting set, delete the chosen in-star
    arcs, and report the density drop with all property flags evaluated.

    ``radius`` is an integer or "auto" for the analysis-scale formula.
    Sampling failures produce a failed report instead of raising.
    """
    if h.n == 0:
        raise ValueError("empty graph")
    gamma = as_fraction(gamma)
    d = as_fraction(d)
    eps_prime = as_fraction(eps_prime)
    radius_requested = str(radius)
    K = auto_radius(gamma) if radius == "auto" else int(radius)

    if orient_rule == "degeneracy":
        order, _ = degeneracy_order(h)
        orientation = orient_by_order(h, order)
    elif orient_rule == "level":
        orientation, _ = level_orientation(h)
    else:
        raise ValueError(f"unknown orientation rule {orient_rule!r}")

    core = reachable_core(orientation, K)
    m1_before = m1_exact(h).value if h.m else None

    base = dict(
        rule=orient_rule,
        radius_requested=radius_requested,
        radius=K,
        gamma=gamma,
        d=d,
        eps_prime=eps_prime,
        seed=seed,
        n=h.n,
        m=h.m,
        core_size=len(core.core),
        m1_before=m1_before,
    )

    try:
        sample = sample_hitting_set(orientation, core, gamma, seed, max_retries)
    except (HittingSetError, ValueError) as exc:
        flags = tuple(
            sorted(
                {
                    "q1_prime": False,
                    "q2_prime": False,
                    "p1": False,
                    "p2": False,
                    "independent": False,
                }.items()
            )
        )
        return PipelineReport(
            retries=max_retries,
            sampled_size=0,
            augmented_size=0,
            x1_size=0,
            x_size=0,
            star_arc_count=0,
            x=(),
            star_arcs=(),
            m1_after=None,
            flags=flags,
            verdict="fail",
            error=str(exc),
            **base,
        )

    x = prune_to_independent(orientation, sample.x1)
    stars = select_in_stars(orientation, x)
    remaining = set(h.edges) - set(stars.edges())
    h_after = Graph(h.n, sorted(remaining))
    m1_after = m1_exact(h_after).value if h_after.m else None

    half_gamma_n = gamma * h.n / 2
    x1_set = set(sample.x1)
    x_set = set(x)
    q2_prime = all(
        (set(out_ball(orientation, v, K)) - {v}) & x1_set for v in core.core
    )
    p2 = all(
        (set(out_ball(orientation, v, K + 1)) - {v}) & x_set for v in core.core
    )
    flags_dict = {
        "q1_prime": Fraction(len(sample.x1)) <= half_gamma_n,
        "q2_prime": q2_prime,
        "p1": Fraction(len(x)) <= half_gamma_n,
        "p2": p2,
        "independent": not _has_internal_edge(h, x),
    }
    target = d - eps_prime
    if m1_after is None:
        verdict = "vacuous pass" if all(flags_dict.values()) else "fail"
    elif all(flags_dict.values()) and m1_after <= target:
        verdict = "pass"
    else:
        verdict = "fail"

    return PipelineReport(
        retries=sample.retries,
        sampled_size=len(sample.sampled),
        augmented_size=len(sample.augmented),
        x1_size=len(sample.x1),
        x_size=len(x),
        star_arc_count=len(stars.arcs),
        x=x,
        star_arcs=stars.arcs,
        m1_after=m1_after,
        flags=tuple(sorted(flags_dict.items())),
        verdict=verdict,
        error=None,
        **base,
    )


@dataclass(frozen=True)
class ExpansionReport:
    """Minimum edge boundary over connected sets in a size window.

    ``passed`` is None when the budget ran out before either scanning
    everything or finding a violation.  The witness is minimal under
    (boundary, size, lexicographic).  ``singleton_min`` records the minimum
    degree for reference; singletons sit outside the checked window.
    """

    passed: Optional[bool]
    bound: int
    min_size: int
    max_size: int
    min_boundary: Optional[int]
    witness: Optional[tuple]
    sets_checked: int
    budget_exhausted: bool
    singleton_min: Optional[int]

    @property
    def status(self) -> str:
        if self.passed is None:
            return "inconclusive"
        return "pass" if self.passed else "fail"


def expansion_check(
    g: Graph,
    max_size: int,
    bound: int,
    min_size: int = 2,
    budget: int = 10**7,
) -> ExpansionReport:
    """Minimum |boundary(X)| over connected X with min_size <= |X| <= max_size.

    Connected sets suffice on regular hosts: a disconnected violator would
    contain a connected part that is itself a violator or a singleton, and
    singletons contribute a full degree each.
    """
    if min_size < 2:
        raise ValueError("min_size below 2 would reduce to degree counting")
    if max_size < min_size:
        raise ValueError(f"max_size {max_size} below min_size {min_size}")
    degs = g.degrees()
    best = None  # (boundary, size, vertex_set)
    checked = 0
    exhausted = False
    try:
        for vs in connected_vertex_sets(g, min_size=min_size, max_size=max_size, budget=budget):
            checked += 1
            boundary = sum(degs[v] for v in vs) - 2 * induced_edge_count(g, vs)
            cand = (boundary, len(vs), vs)
            if best is None or cand < best:
                best = cand
    except EnumerationBudgetExceeded:
        exhausted = True

    singleton_min = min(degs) if g.n else None
    if best is None:
        return ExpansionReport(
            None if exhausted else True,
            bound, min_size, max_size, None, None, checked, exhausted, singleton_min,
        )
    min_boundary, _, witness = best
    if exhausted:
        passed = False if min_boundary < bound else None
    else:
        passed = min_boundary >= bound
    return ExpansionReport(
        passed, bound, min_size, max_size, min_boundary, witness,
        checked, exhausted, singleton_min,
    )
