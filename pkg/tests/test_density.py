import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perturb.density import (
    check_small_density,
    induced_edge_count,
    m1_bruteforce,
    m1_exact,
)
from perturb.enumeration import connected_vertex_sets
from perturb.families import power_of_cycle
from perturb.graphs import Graph

from conftest import brute_force_m1, complete, cycle, petersen


def graphs_with_an_edge():
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=2, max_value=8))
        pairs = list(itertools.combinations(range(n), 2))
        mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
        edges = [e for e, keep in zip(pairs, mask) if keep]
        if not edges:
            edges = [(0, 1)]
        return Graph(n, edges)

    return build()


class TestEnumeration:
    def test_counts_match_powerset_filter(self):
        for g in [cycle(5), complete(4), petersen(), Graph(6, [(0, 1), (2, 3)])]:
            seen = set(connected_vertex_sets(g, min_size=1, max_size=g.n))
            assert len(seen) == sum(1 for _ in connected_vertex_sets(g))
            expected = set()
            for k in range(1, min(g.n, 7) + 1):
                for vs in itertools.combinations(range(g.n), k):
                    sub_edges = [
                        e for e in g.edges if e[0] in vs and e[1] in vs
                    ]
                    sub = Graph(len(vs), [])
                    # connectivity via union-find over the subset
                    parent = {v: v for v in vs}

                    def find(a):
                        while parent[a] != a:
                            parent[a] = parent[parent[a]]
                            a = parent[a]
                        return a

                    for u, v in sub_edges:
                        parent[find(u)] = find(v)
                    if len({find(v) for v in vs}) == 1:
                        expected.add(vs)
            assert {s for s in seen if len(s) <= 7} == expected

    def test_budget_raises(self):
        from perturb.enumeration import EnumerationBudgetExceeded

        with pytest.raises(EnumerationBudgetExceeded):
            list(connected_vertex_sets(petersen(), budget=10))


class TestBruteForce:
    def test_single_edge(self):
        dv = m1_bruteforce(Graph(2, [(0, 1)]))
        assert dv.value == 1 and dv.witness == (0, 1)

    def test_k4(self, k4):
        dv = m1_bruteforce(k4)
        assert dv.value == 2 and dv.witness == (0, 1, 2, 3)

    def test_octahedron(self, octahedron):
        dv = m1_bruteforce(octahedron)
        assert dv.value == Fraction(12, 5)
        assert dv.witness == tuple(range(6))

    def test_rejects_edgeless(self):
        with pytest.raises(ValueError, match="edgeless"):
            m1_bruteforce(Graph(3, []))

    def test_rejects_large(self):
        with pytest.raises(ValueError, match="capped"):
            m1_bruteforce(Graph(20, [(0, 1)]), max_n=16)

    @settings(max_examples=60, deadline=None)
    @given(graphs_with_an_edge())
    def test_connectivity_restriction_lossless(self, g):
        assert m1_bruteforce(g).value == brute_force_m1(g)


class TestExact:
    def test_single_edge(self):
        assert m1_exact(Graph(2, [(0, 1)])).value == 1

    def test_petersen(self):
        dv = m1_exact(petersen())
        assert dv.value == Fraction(5, 3)
        assert dv.witness == tuple(range(10))

    def test_octahedron(self, octahedron):
        assert m1_exact(octahedron).value == Fraction(12, 5)

    def test_rejects_edgeless(self):
        with pytest.raises(ValueError, match="edgeless"):
            m1_exact(Graph(3, []))

    def test_witness_reproduces_value(self):
        g = power_of_cycle(30, 2)
        dv = m1_exact(g)
        e = induced_edge_count(g, dv.witness)
        assert Fraction(e, len(dv.witness) - 1) == dv.value == Fraction(60, 29)

    def test_disconnected(self):
        # two components: a K4 and a triangle; the K4 wins
        g = Graph(7, list(itertools.combinations(range(4), 2)) + [(4, 5), (5, 6), (4, 6)])
        dv = m1_exact(g)
        assert dv.value == 2 and dv.witness == (0, 1, 2, 3)

    @settings(max_examples=60, deadline=None)
    @given(graphs_with_an_edge())
    def test_matches_oracle(self, g):
        assert m1_exact(g).value == m1_bruteforce(g).value

    @settings(max_examples=30, deadline=None)
    @given(graphs_with_an_edge(), st.data())
    def test_edge_deletion_monotone(self, g, data):
        if g.m < 2:
            return
        idx = data.draw(st.integers(min_value=0, max_value=g.m - 1))
        smaller = Graph(g.n, [e for i, e in enumerate(g.edges) if i != idx])
        assert m1_exact(smaller).value <= m1_exact(g).value


class TestSmallDensity:
    def test_k4_fails(self, k4):
        report = check_small_density(k4, 2, 10)
        assert report.passed is False
        vs, m, e = report.witness
        assert (m, e) == (4, 6) and vs == (0, 1, 2, 3)
        assert Fraction(e) > report.d * (m - 1) - Fraction(1, 2)

    def test_c6_passes(self):
        report = check_small_density(cycle(6), 2, 10)
        assert report.passed is True and report.witness is None

    def test_c40_squared_passes(self):
        report = check_small_density(power_of_cycle(40, 2), 2, 20)
        assert report.passed is True
        assert report.max_order == 10

    def test_interval_subsets_closed_form(self):
        # oracle for the cycle power: m consecutive vertices induce 2m-3 edges
        g = power_of_cycle(40, 2)
        for m in range(2, 11):
            vs = tuple(range(m))
            assert induced_edge_count(g, vs) == 2 * m - 3

    def test_rational_d(self):
        # bound 3/2: a triangle has e=3 > (3/2)*2 - 1/2 = 5/2
        report = check_small_density(complete(3), "3/2", 6)
        assert report.passed is False
        assert report.witness[1:] == (3, 3)

    def test_budget_inconclusive(self):
        report = check_small_density(petersen(), 3, 10, budget=5)
        assert report.passed is None and report.status == "inconclusive"
        assert report.budget_exhausted

    def test_rejects_small_k(self, k4):
        with pytest.raises(ValueError, match="at least 4"):
            check_small_density(k4, 2, 3)

    @settings(max_examples=40, deadline=None)
    @given(graphs_with_an_edge())
    def test_component_additivity(self, g):
        # if the connected check passes, every subset (connected or not)
        # of size <= K//2 satisfies the bound
        K = 8
        d = Fraction(5, 2)
        report = check_small_density(g, d, K)
        if report.passed:
            for k in range(2, K // 2 + 1):
                for vs in itertools.combinations(range(g.n), k):
                    e = induced_edge_count(g, vs)
                    assert Fraction(e) <= d * (k - 1) - Fraction(1, 2)
