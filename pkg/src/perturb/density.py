"""Exact 1-density certification and the small-subgraph density condition.

The 1-density of a graph with at least one edge is the maximum of
e(S)/(|S|-1) over vertex sets S with |S| >= 2.  The maximum is always
attained by a connected set: a disconnected S with c components satisfies
e(S) <= m1*(|S|-c) < m1*(|S|-1), so restricting enumeration to connected
sets is lossless.  All stored results are exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import backend
from .enumeration import EnumerationBudgetExceeded, connected_vertex_sets
from .graphs import Graph, connected_components
from .rationals import as_fraction

__all__ = [
    "DensityValue",
    "SmallDensityReport",
    "m1_bruteforce",
    "m1_exact",
    "check_small_density",
]

DEFAULT_ORACLE_CAP = 16
DEFAULT_SUBSET_BUDGET = 10**7


@dataclass(frozen=True)
class DensityValue:
    """An attained 1-density: value = numerator/denominator = e(S)/(|S|-1)."""

    numerator: int
    denominator: int
    value: Fraction
    witness: tuple

    def __post_init__(self):
        if len(self.witness) < 2:
            raise ValueError("density witness needs at least two vertices")
        if Fraction(self.numerator, self.denominator) != self.value:
            raise ValueError("stored value disagrees with numerator/denominator")


@dataclass(frozen=True)
class SmallDensityReport:
    """Outcome of the e <= d*(m-1) - 1/2 check over small connected sets.

    ``passed`` is None when the enumeration budget ran out before finding a
    violation (inconclusive).  A witness is a (vertex_set, m, e) triple.
    """

    passed: Optional[bool]
    d: Fraction
    K: int
    max_order: int
    witness: Optional[tuple]
    sets_checked: int
    budget_exhausted: bool

    @property
    def status(self) -> str:
        if self.passed is None:
            return "inconclusive"
        return "pass" if self.passed else "fail"


def induced_edge_count(g: Graph, vertices) -> int:
    members = set(vertices)
    total = 0
    for v in members:
        for u in g.adj[v]:
            if u > v and u in members:
                total += 1
    return total


def _density_value(g: Graph, witness: tuple) -> DensityValue:
    e = induced_edge_count(g, witness)
    k = len(witness) - 1
    return DensityValue(numerator=e, denominator=k, value=Fraction(e, k), witness=witness)


def m1_bruteforce(g: Graph, max_n: int = DEFAULT_ORACLE_CAP) -> DensityValue:
    """Exhaustive 1-density oracle over connected vertex sets."""
    if g.m == 0:
        raise ValueError("1-density is undefined for an edgeless graph")
    if g.n > max_n:
        raise ValueError(f"brute-force oracle capped at n <= {max_n}, got n = {g.n}")
    best_val = Fraction(-1)
    best_wit = None
    for vs in connected_vertex_sets(g, min_size=2):
        e = induced_edge_count(g, vs)
        val = Fraction(e, len(vs) - 1)
        if val > best_val:
            best_val, best_wit = val, vs
    return _density_value(g, best_wit)


def m1_exact(g: Graph) -> DensityValue:
    """Exact 1-density via anchored parametric min cut.

    Binary search over a dyadic threshold grid: a probe at lam asks, for
    every anchor r of degree above lam, whether some set containing r has
    e(S) - lam*(|S|-1) > 0 (a min cut per anchor; anchors of degree <= lam
    can be skipped because a maximizing set may be assumed to have minimum
    induced degree above lam).  Successful probes raise the lower bound to
    the exact density of the returned witness; failures lower the upper
    bound.  Once the interval is narrower than 1/(2(n-1)^2), which is below
    the spacing of distinct candidate densities, the best witness density is
    the exact answer.
    """
    if g.m == 0:
        raise ValueError("1-density is undefined for an edgeless graph")
    n = g.n

    best_wit = g.edges[0]
    best_val = Fraction(1)
    for comp in connected_components(g):
        if len(comp) < 2:
            continue
        e = induced_edge_count(g, comp)
        if e:
            val = Fraction(e, len(comp) - 1)
            if val > best_val:
                best_val, best_wit = val, comp

    scale_bits = 32
    while (1 << scale_bits) < 4 * (n - 1) ** 2:
        scale_bits += 1
    scale = 1 << scale_bits
    if g.m * scale >= 1 << 62:
        raise ValueError(f"graph too large for the exact density kernel (n={n}, m={g.m})")

    eu = [u for u, _ in g.edges]
    ev = [v for _, v in g.edges]
    degs = g.degrees()
    hi_frac = min(Fraction(n, 2), Fraction(g.max_degree() + 1, 2))

    def scaled_floor(f: Fraction) -> int:
        return (f.numerator * scale) // f.denominator

    lo = scaled_floor(best_val) - 1
    hi = -((-hi_frac.numerator * scale) // hi_frac.denominator) + 1
    term = max(1, scale // (2 * (n - 1) ** 2))

    while hi - lo >= term:
        mid = (lo + hi) // 2
        anchors = [v for v in range(n) if degs[v] * scale > mid]
        wit = backend.anchored_density_scan(n, eu, ev, mid, scale, anchors)
        if wit is None:
            hi = mid
        else:
            wit = tuple(int(v) for v in wit)
            e = induced_edge_count(g, wit)
            val = Fraction(e, len(wit) - 1)
            if val * scale <= mid:
                raise AssertionError("min-cut witness does not beat its own probe")
            if val > best_val:
                best_val, best_wit = val, wit
            lo = max(mid, scaled_floor(best_val) - 1)

    return _density_value(g, tuple(best_wit))


def check_small_density(
    g: Graph, d, K: int, budget: int = DEFAULT_SUBSET_BUDGET
) -> SmallDensityReport:
    """Check e(S) <= d*(|S|-1) - 1/2 for every connected S with 2 <= |S| <= K//2.

    Connected sets suffice: a disconnected violator of c components would
    need e > d*(m-1) - 1/2 >= d*(m-c) + (c-1)*d - 1/2, forcing some
    component to violate on its own.  The reported witness is minimal under
    (size, lexicographic) among violations seen; if the budget runs out
    before any violation, the result is inconclusive rather than a silent
    pass.
    """
    if K < 4:
        raise ValueError(f"K must be at least 4, got {K}")
    d = as_fraction(d)
    max_order = K // 2
    half = Fraction(1, 2)
    best = None  # (m, vertex_set, e), minimal by (m, vertex_set)
    checked = 0
    exhausted = False
    try:
        for vs in connected_vertex_sets(g, min_size=2, max_size=max_order, budget=budget):
            checked += 1
            e = induced_edge_count(g, vs)
            m = len(vs)
            if Fraction(e) > d * (m - 1) - half:
                if best is None or (m, vs) < (best[0], best[1]):
                    best = (m, vs, e)
    except EnumerationBudgetExceeded:
        exhausted = True

    if best is not None:
        witness = (best[1], best[0], best[2])
        return SmallDensityReport(False, d, K, max_order, witness, checked, exhausted)
    if exhausted:
        return SmallDensityReport(None, d, K, max_order, None, checked, True)
    return SmallDensityReport(True, d, K, max_order, None, checked, False)
