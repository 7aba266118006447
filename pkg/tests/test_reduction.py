from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from perturb.density import induced_edge_count, m1_exact
from perturb.families import kd_gadget, power_of_cycle, random_degenerate, random_regular
from perturb.graphs import Graph, Orientation, edge_boundary, out_ball
from perturb.reduction import (
    HittingSetError,
    StarSelection,
    expansion_check,
    prune_to_independent,
    reachable_core,
    run_reduction,
    sample_hitting_set,
    select_in_stars,
)


def chain(n):
    g = Graph(n, [(i, i + 1) for i in range(n - 1)])
    return Orientation(g, [(i, i + 1) for i in range(n - 1)])


class TestReachableCore:
    def test_edgeless(self):
        d = Orientation(Graph(4, []), [])
        core = reachable_core(d, 4)
        assert core.core == () and core.ball_sizes == (1, 1, 1, 1)

    def test_binary_tree(self):
        arcs = []
        for v in range(2**5 - 1):
            arcs.extend([(v, 2 * v + 1), (v, 2 * v + 2)])
        g = Graph(2**6 - 1, arcs)
        d = Orientation(g, arcs)
        core = reachable_core(d, 4)
        assert 0 in core.core and core.ball_sizes[0] == 31
        leaf = 2**6 - 2
        assert leaf not in core.core and core.ball_sizes[leaf] == 1

    def test_directed_path(self):
        core = reachable_core(chain(11), 4)
        assert core.ball_sizes[0] == 5 and 0 in core.core

    def test_rejects_tiny_radius(self):
        with pytest.raises(ValueError):
            reachable_core(chain(3), 1)


class TestSampleHittingSet:
    def test_empty_core_keeps_raw_sample(self):
        d = Orientation(Graph(40, []), [])
        core = reachable_core(d, 6)
        assert core.core == ()
        sample = sample_hitting_set(d, core, "0.2", seed=3)
        assert sample.augmented == () and sample.x1 == sample.sampled

    def test_hitting_property(self):
        h = power_of_cycle(200, 2)
        from perturb.graphs import level_orientation

        d, _ = level_orientation(h)
        core = reachable_core(d, 10)
        sample = sample_hitting_set(d, core, "0.2", seed=5)
        x1 = set(sample.x1)
        for v in core.core:
            assert (set(out_ball(d, v, 10)) - {v}) & x1

    def test_c1000_within_five_retries(self):
        h = power_of_cycle(1000, 2)
        from perturb.graphs import level_orientation

        d, _ = level_orientation(h)
        core = reachable_core(d, 20)
        sample = sample_hitting_set(d, core, "0.1", seed=7, max_retries=5)
        assert len(sample.x1) <= 50
        assert sample.retries < 5

    def test_singleton_ball_rejected(self):
        # radius-2 core admits vertices with no out-arcs at all
        d = Orientation(Graph(3, []), [])
        core = reachable_core(d, 2)
        assert core.core == (0, 1, 2)
        with pytest.raises(ValueError, match="singleton ball"):
            sample_hitting_set(d, core, "0.5", seed=0)

    def test_retry_exhaustion_reports(self):
        # gamma so small that |X1| <= gamma*n/2 < 1 can never hold once
        # the core forces an augmentation
        d = chain(40)
        core = reachable_core(d, 6)
        with pytest.raises(HittingSetError) as err:
            sample_hitting_set(d, core, "0.01", seed=1, max_retries=3)
        assert "x1" in err.value.diagnostics


class TestPrune:
    def test_chain_trace(self):
        d = chain(3)  # arcs 0->1->2
        assert prune_to_independent(d, (0, 1, 2)) == (0, 2)

    def test_two_sources_one_sink(self):
        g = Graph(3, [(0, 1), (1, 2)])
        d = Orientation(g, [(0, 1), (2, 1)])
        assert prune_to_independent(d, (0, 1, 2)) == (1,)

    def test_already_independent_fixed_point(self):
        d = chain(5)
        assert prune_to_independent(d, (0, 2, 4)) == (0, 2, 4)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_output_independent_and_stable(self, seed):
        h = random_degenerate(40, 2, 6, seed=seed)
        from perturb.graphs import degeneracy_order, orient_by_order

        d = orient_by_order(h, degeneracy_order(h)[0])
        import numpy as np

        rng = np.random.default_rng(seed)
        x1 = tuple(sorted(rng.choice(40, size=12, replace=False).tolist()))
        x = prune_to_independent(d, x1)
        assert set(x) <= set(x1)
        assert induced_edge_count(h, x) == 0
        assert prune_to_independent(d, x) == x  # one more round: fixed point


class TestSelectInStars:
    def test_min_index_tie_break(self):
        g = Graph(3, [(0, 1), (0, 2)])
        d = Orientation(g, [(0, 1), (0, 2)])
        sel = select_in_stars(d, (1, 2))
        assert sel.arcs == ((0, 1),)

    def test_one_root_two_leaves(self):
        g = Graph(3, [(0, 2), (1, 2)])
        d = Orientation(g, [(0, 2), (1, 2)])
        sel = select_in_stars(d, (2,))
        assert sel.arcs == ((0, 2), (1, 2))
        assert sel.stars() == {2: (0, 1)}

    def test_no_arcs_into_x(self):
        d = chain(3)
        sel = select_in_stars(d, (0,))
        # arc 0->1 leaves 0; only in-arcs count, and none point into {0}
        assert sel.arcs == ()

    def test_rejects_dependent_set(self):
        d = chain(3)
        with pytest.raises(ValueError, match="independent"):
            select_in_stars(d, (0, 1))

    def test_star_vertices_disjointness(self):
        h = power_of_cycle(60, 2)
        from perturb.graphs import level_orientation

        d, _ = level_orientation(h)
        sel = select_in_stars(d, (10, 30, 50))
        sources = [u for u, _ in sel.arcs]
        assert len(sources) == len(set(sources))
        assert len(sel.arcs) <= h.max_degree() * 3


class TestRunReduction:
    def test_edgeless_vacuous(self):
        rep = run_reduction(Graph(30, []), "level", 6, "0.2", 2, seed=1)
        assert rep.verdict == "vacuous pass"
        assert rep.m1_before is None and rep.m1_after is None
        assert rep.star_arc_count == 0

    def test_c60_level(self):
        h = power_of_cycle(60, 2)
        rep = run_reduction(h, "level", 20, "0.1", 2, seed=1)
        assert rep.verdict == "pass"
        assert rep.m1_before == Fraction(120, 59)
        assert rep.m1_after is not None and rep.m1_after <= 2
        assert rep.x_size <= 3
        assert induced_edge_count(h, rep.x) == 0

    def test_degenerate_rule(self):
        h = random_degenerate(300, 3, 8, seed=4)
        rep = run_reduction(h, "degeneracy", 12, "0.2", 3, seed=4)
        assert dict(rep.flags)["independent"]
        assert rep.m1_after is None or rep.m1_after <= 3
        from perturb.graphs import degeneracy_order, orient_by_order

        d = orient_by_order(h, degeneracy_order(h)[0])
        assert d.max_out_degree() <= 3

    def test_sampling_failure_reported_not_raised(self):
        h = power_of_cycle(40, 2)
        rep = run_reduction(h, "level", 6, "0.01", 2, seed=1, max_retries=2)
        assert rep.verdict == "fail"
        assert rep.error is not None
        assert not dict(rep.flags)["p2"]

    def test_json_stable(self):
        h = power_of_cycle(60, 2)
        a = run_reduction(h, "level", 20, "0.1", 2, seed=3).to_json()
        b = run_reduction(h, "level", 20, "0.1", 2, seed=3).to_json()
        assert a.encode() == b.encode()

    def test_auto_radius_recorded(self):
        h = power_of_cycle(40, 2)
        rep = run_reduction(h, "level", "auto", "0.5", 2, seed=2)
        assert rep.radius_requested == "auto"
        assert rep.radius == 74  # ceil(10*ln(40)/0.5)

    def test_bad_rule(self):
        with pytest.raises(ValueError, match="rule"):
            run_reduction(power_of_cycle(10, 2), "sideways", 6, "0.2", 2)


class TestExpansionCheck:
    def test_c40_squared_passes_bound_5(self):
        report = expansion_check(power_of_cycle(40, 2), max_size=8, bound=5)
        assert report.passed is True
        assert report.min_boundary == 6
        assert report.witness == (0, 1)
        assert report.singleton_min == 4

    def test_gadget_fails_with_clique_witness(self):
        report = expansion_check(kd_gadget(40, 4), max_size=8, bound=5)
        assert report.passed is False
        assert report.min_boundary == 4
        assert report.witness == (0, 1, 2, 3)

    def test_interval_boundary_oracle(self):
        g = power_of_cycle(40, 2)
        for k in range(2, 9):
            count, _ = edge_boundary(g, range(k))
            assert count == 6

    def test_budget_inconclusive(self):
        report = expansion_check(power_of_cycle(40, 2), max_size=8, bound=5, budget=20)
        assert report.passed is None and report.budget_exhausted

    def test_budget_violation_still_fails(self):
        # tiny budget but the very first sets already violate a huge bound
        report = expansion_check(power_of_cycle(40, 2), max_size=8, bound=100, budget=25)
        assert report.passed is False

    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=0, max_value=10**6))
    def test_connected_restriction_sound_on_regular(self, seed):
        import itertools

        n, d = 10, 3
        g = random_regular(n, d, seed=seed)
        bound = d + 1
        report = expansion_check(g, max_size=5, bound=bound)
        # oracle: unrestricted enumeration over all sets of size 2..5
        violating = False
        for k in range(2, 6):
            for vs in itertools.combinations(range(n), k):
                if edge_boundary(g, vs)[0] < bound:
                    violating = True
        assert report.passed == (not violating)
