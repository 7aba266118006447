import itertools

import pytest

from perturb.graphs import Graph


def complete(n):
    return Graph(n, list(itertools.combinations(range(n), 2)))


def cycle(n):
    return Graph(n, [(i, (i + 1) % n) if i + 1 < n else (0, n - 1) for i in range(n)])


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, [tuple(sorted(e)) for e in outer + spokes + inner])


def brute_force_m1(g):
    """Independent oracle: maximum e(S)/(|S|-1) over all subsets, connected
    or not (used to check the connectivity restriction is lossless)."""
    from fractions import Fraction

    best = Fraction(-1)
    for k in range(2, g.n + 1):
        for vs in itertools.combinations(range(g.n), k):
            members = set(vs)
            e = sum(1 for u, v in g.edges if u in members and v in members)
            best = max(best, Fraction(e, k - 1))
    return best


def edge_count_in(g, vs):
    members = set(vs)
    return sum(1 for u, v in g.edges if u in members and v in members)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def octahedron():
    from perturb.families import power_of_cycle

    return power_of_cycle(6, 2)
