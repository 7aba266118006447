from fractions import Fraction

import numpy as np
import pytest

from perturb.families import dense_base, power_of_cycle, sample_gnp, union_graph
from perturb.graphs import Graph, degeneracy_order, orient_by_order
from perturb.reduction import StarSelection, select_in_stars
from perturb.spread import (
    EmbedResult,
    SpreadPoolError,
    estimate_vertex_spread,
    exact_spanning_embed,
    high_degree_set,
    sample_spread_embedding,
    two_phase_embed,
    uniform_injection,
)

from conftest import complete, cycle, petersen


def star_free(n):
    return StarSelection(x=(), arcs=())


class TestHighDegreeSet:
    def test_complete(self):
        hd = high_degree_set(complete(8), "0.25")
        assert hd.members == tuple(range(8))

    def test_half_clique(self):
        g = dense_base(10, "half-clique", "0.1")
        hd = high_degree_set(g, "0.1")
        assert hd.members == (0, 1, 2, 3, 4)
        assert hd.threshold == Fraction(1, 2)

    def test_too_sparse(self):
        with pytest.raises(ValueError, match="too sparse"):
            high_degree_set(cycle(10), "0.1")


class TestSampleSpreadEmbedding:
    def test_no_stars_is_uniform_injection(self):
        g = complete(12)
        h = power_of_cycle(12, 2)
        emb = sample_spread_embedding(h, star_free(12), g, "0.2", seed=3)
        assert sorted(emb.phi) == list(range(12))
        assert set(emb.tags) == {"free"}

    def test_star_arcs_land_in_host(self):
        n = 40
        h = Graph(n, [(0, 3), (1, 3), (2, 3)])  # one in-star shape at vertex 3
        d = orient_by_order(h, tuple(range(n))[::-1])
        # orientation arcs point from lower to higher order position; build
        # explicit stars into root 3 instead
        stars = StarSelection(x=(3,), arcs=((0, 3), (1, 3), (2, 3)))
        g = dense_base(n, "half-clique", "0.1")
        emb = sample_spread_embedding(h, stars, g, "0.1", seed=9)
        for u, q in stars.arcs:
            assert g.has_edge(emb.phi[u], emb.phi[q])
        assert emb.tags[3] == "star-root"
        assert emb.tags[0] == emb.tags[1] == emb.tags[2] == "star-leaf"

    def test_pool_error_names_step(self):
        # stars larger than the clique can absorb
        n = 12
        h = power_of_cycle(n, 2)
        d = orient_by_order(h, degeneracy_order(h)[0])
        stars = select_in_stars(d, (0, 3, 6, 9))
        g = dense_base(n, "half-clique", "0.1")  # K6 plus isolated
        with pytest.raises(SpreadPoolError, match="draw"):
            for seed in range(50):
                sample_spread_embedding(h, stars, g, "0.1", seed=seed)

    def test_deterministic(self):
        g = dense_base(20, "half-clique", "0.1")
        h = power_of_cycle(20, 2)
        d = orient_by_order(h, degeneracy_order(h)[0])
        stars = select_in_stars(d, (0, 10))
        a = sample_spread_embedding(h, stars, g, "0.1", seed=4)
        b = sample_spread_embedding(h, stars, g, "0.1", seed=4)
        assert a == b


class TestEstimateVertexSpread:
    def test_uniform_permutation_baseline(self):
        est = estimate_vertex_spread(
            lambda rng: uniform_injection(10, 10, rng), 10, 10,
            samples=2 * 10**4, seed=1,
        )
        assert abs(est.s1_max - 0.1) < 0.02
        assert est.s1_max <= np.e / 10
        assert est.s2_max <= (np.e / 10) ** 2 * 3

    def test_point_mass_fails_spread(self):
        est = estimate_vertex_spread(
            lambda rng: tuple(range(8)), 8, 8, samples=10**4, seed=0,
        )
        assert est.s1_max == 1.0

    def test_minimum_samples_enforced(self):
        with pytest.raises(ValueError, match="samples"):
            estimate_vertex_spread(lambda rng: (0,), 1, 1, samples=100)

    def test_deterministic(self):
        est1 = estimate_vertex_spread(
            lambda rng: uniform_injection(6, 8, rng), 6, 8, samples=10**4, seed=9,
        )
        est2 = estimate_vertex_spread(
            lambda rng: uniform_injection(6, 8, rng), 6, 8, samples=10**4, seed=9,
        )
        assert est1 == est2


class TestExactSpanningEmbed:
    def test_complete_host_always_found(self):
        h = power_of_cycle(8, 2)
        res = exact_spanning_embed(h, complete(8))
        assert res.status == "found"

    def test_triangle_free_host(self):
        h = Graph(5, [(0, 1), (0, 2), (1, 2)])  # K3 plus 2 isolated vertices
        res = exact_spanning_embed(h, cycle(5))
        assert res.status == "none"

    def test_relabelled_isomorph(self):
        h = power_of_cycle(12, 2)
        perm = [7, 2, 9, 0, 4, 11, 1, 8, 3, 10, 5, 6]
        host = Graph(12, [tuple(sorted((perm[u], perm[v]))) for u, v in h.edges])
        res = exact_spanning_embed(h, host)
        assert res.status == "found"
        for u, v in h.edges:
            assert host.has_edge(res.embedding.phi[u], res.embedding.phi[v])

    def test_size_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            exact_spanning_embed(cycle(4), cycle(5))

    def test_petersen_into_itself(self):
        res = exact_spanning_embed(petersen(), petersen())
        assert res.status == "found"


class TestTwoPhaseEmbed:
    def _stars_for(self, h):
        d = orient_by_order(h, degeneracy_order(h)[0])
        return select_in_stars(d, (0,))

    def test_complete_random_part(self):
        h = power_of_cycle(12, 2)
        g = dense_base(12, "half-clique", "0.1")
        res = two_phase_embed(h, self._stars_for(h), g, complete(12), "0.1", seed=0)
        assert res.status == "found" and res.restarts_used == 1

    def test_found_embedding_verified(self):
        h = power_of_cycle(12, 2)
        g = dense_base(12, "half-clique", "0.1")
        r = sample_gnp(12, 0.9, seed=5)
        res = two_phase_embed(h, self._stars_for(h), g, r, "0.1", seed=1)
        if res.status == "found":
            union = union_graph(g, r)
            for u, v in h.edges:
                assert union.has_edge(res.embedding.phi[u], res.embedding.phi[v])

    def test_success_rate_against_exact(self):
        h = power_of_cycle(12, 2)
        g = dense_base(12, "half-clique", "0.1")
        stars = self._stars_for(h)
        solvable = 0
        heuristic_hits = 0
        for seed in range(100):
            r = sample_gnp(12, 0.8, seed=seed)
            exact = exact_spanning_embed(h, union_graph(g, r))
            if exact.status != "found":
                continue
            solvable += 1
            res = two_phase_embed(h, stars, g, r, "0.1", seed=seed, restarts=20)
            heuristic_hits += res.status == "found"
        assert solvable >= 20
        assert heuristic_hits >= solvable / 2

    def test_not_found_is_not_a_certificate(self):
        h = power_of_cycle(12, 2)
        g = dense_base(12, "half-clique", "0.1")
        res = two_phase_embed(h, self._stars_for(h), g, Graph(12, []), "0.1",
                              seed=2, restarts=2)
        assert res.status == "not-found"
