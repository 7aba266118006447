"""Connected vertex-set enumeration.

Every connected set is visited exactly once: each set is grown from its
minimum vertex, and a candidate removed from the extension list is never
reconsidered in that branch.  Enumeration order is deterministic.
"""

from __future__ import annotations

from .graphs import Graph

__all__ = ["connected_vertex_sets", "EnumerationBudgetExceeded"]


class EnumerationBudgetExceeded(RuntimeError):
    """Raised when the subset budget runs out; carries the visit count."""

    def __init__(self, visited: int):
        super().__init__(f"enumeration budget exhausted after {visited} subsets")
        self.visited = visited


def connected_vertex_sets(g: Graph, min_size: int = 1, max_size=None, budget=None):
    """Yield each connected vertex set with min_size <= size <= max_size once.

    Sets are yielded as sorted tuples.  ``budget`` caps the total number of
    sets visited (including sizes below min_size, which are interior nodes
    of the search).
    """
    n = g.n
    if max_size is None:
        max_size = n
    if max_size < 1 or min_size > max_size:
        return
    adj = g.adj
    visited = 0

    def extend(sub, ext, nbhd, s):
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise EnumerationBudgetExceeded(visited)
        if len(sub) >= min_size:
            yield tuple(sorted(sub))
        if len(sub) == max_size:
            return
        work = list(ext)
        while work:
            w = work.pop(0)
            fresh = [u for u in adj[w] if u > s and u not in nbhd]
            yield from extend(sub + [w], work + fresh, nbhd | set(fresh), s)

    for s in range(n):
        ext0 = [u for u in adj[s] if u > s]
        yield from extend([s], ext0, {s, *ext0}, s)
