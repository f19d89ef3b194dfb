from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from harary.graph import Graph, enumerate_graphs, make_named
from harary.errors import CapacityError
from harary.experiments import (
    GnpParams, SparseGraph, bowtie, collision_rate, fr_counts_by_cover, fr_vanishes,
    fr_vanishing_rate, has_cycle_factor, has_two_cycles_sharing_one_vertex, induced_cycles,
    log_ratio_band, max_degree_profile, sample_gnp, triangle_in_blocks_rate,
    two_cycle_incidence_rate,
)
from harary.polynomials import harary_counts
from harary.properties import DisjointUnionsOf


def test_params_validation():
    with pytest.raises(ValueError):
        GnpParams(5, Fraction(3, 2))
    with pytest.raises(ValueError):
        GnpParams(5, Fraction(1, 2), trials=0)
    with pytest.raises(CapacityError):
        GnpParams(10 ** 6, Fraction(1, 2))
    assert GnpParams.sparse(200, 2).p == Fraction(1, 100)


def test_extreme_probabilities():
    assert sample_gnp(GnpParams(8, Fraction(0)), 0).m == 0
    assert sample_gnp(GnpParams(8, Fraction(1)), 0) == make_named("K", 8)


def test_mean_edge_count():
    params = GnpParams(10, Fraction(1, 2), seed=1, trials=10_000)
    counts = [sample_gnp(params, i).m for i in range(params.trials)]
    sd = sqrt(45 * 0.25 / params.trials)
    assert abs(np.mean(counts) - 22.5) < 3 * sd


def test_sparse_sampler_mean():
    # above the dense pair limit the sampler switches to a binomial edge count
    params = GnpParams.sparse(4000, 2, seed=3, trials=3)
    ms = [sample_gnp(params, i, structural=True).m for i in range(3)]
    assert all(abs(m - 3999) < 5 * sqrt(3999) for m in ms)


def test_determinism():
    params = GnpParams(12, Fraction(1, 3), seed=9, trials=5)
    a = [sample_gnp(params, i) for i in range(5)]
    b = [sample_gnp(params, i) for i in range(5)]
    assert a == b
    assert sample_gnp(GnpParams(12, Fraction(1, 3), seed=10, trials=5), 0) != a[0] or a[0].m == 0
    with pytest.raises(ValueError):
        sample_gnp(params, 5)


def test_induced_cycles():
    assert len(induced_cycles(make_named("C", 5), 5)) == 1
    assert len(induced_cycles(make_named("K", 4), 3)) == 4
    assert induced_cycles(make_named("K", 4), 4) == []
    assert has_cycle_factor(make_named("mC", 2, 4), 4)
    assert not has_cycle_factor(make_named("C", 8), 4)


@pytest.mark.parametrize("r", [3, 4])
def test_cover_matches_dp(r):
    prop = DisjointUnionsOf(make_named("C", r), f"C{r}")
    for n in range(r, 8):
        for g in enumerate_graphs(n):
            assert fr_counts_by_cover(g, r) == harary_counts(g, prop)
            assert fr_vanishes(g, r) == harary_counts(g, prop).is_zero()


def test_fr_fast_path_agrees_with_sampling():
    params = GnpParams(10, Fraction(1, 2), seed=4, trials=30)
    fast = fr_vanishing_rate(4, params)
    slow = fr_vanishing_rate(4, params, force_sampling=True)
    assert fast.successes == slow.successes == 30
    assert fast.details["trials_executed"] == 0 and slow.details["trials_executed"] == 30


def test_fr_controls():
    params = GnpParams(8, Fraction(1, 2), trials=4)
    assert fr_vanishing_rate(4, params, control=make_named("mC", 2, 4)).successes == 0
    assert fr_vanishing_rate(4, params, control=make_named("C", 8)).successes == 4


def test_two_cycle_detector():
    assert has_two_cycles_sharing_one_vertex(bowtie(3), 3)
    assert has_two_cycles_sharing_one_vertex(SparseGraph.from_graph(bowtie(4)), 4)
    assert not has_two_cycles_sharing_one_vertex(make_named("mC", 2, 3), 3)
    assert not has_two_cycles_sharing_one_vertex(make_named("K", 4), 3)  # triangles share edges


def test_two_cycle_zero_degree():
    reports = two_cycle_incidence_rate(3, 0, [50, 100], trials=10, seed=1)
    assert [r.successes for r in reports] == [0, 0]


def test_triangle_blocks_controls():
    params = GnpParams(12, Fraction(1, 2), seed=2, trials=3)
    none = triangle_in_blocks_rate(4, params, 5, control=Graph(12))
    assert none.estimate == 1
    full = triangle_in_blocks_rate(4, params, 5, control=make_named("K", 12))
    assert full.estimate == 0
    with pytest.raises(ValueError):
        triangle_in_blocks_rate(5, params, 5)


def test_max_degree_profile():
    params = GnpParams.sparse(2000, 2, seed=5, trials=5)
    band = log_ratio_band(2000)
    rep = max_degree_profile(params, band)
    assert rep.details["min"] >= 2 and rep.successes <= 5


def test_collision_rate_edge_cases():
    rep = collision_rate("chromatic", None, GnpParams(5, Fraction(0), trials=4))
    assert rep.trials == 0 and rep.estimate == 1
    rep = collision_rate("chromatic", None, GnpParams(6, Fraction(1, 2), seed=3, trials=20))
    assert 0 <= rep.estimate <= 1


def test_report_json_is_stable():
    params = GnpParams(12, Fraction(1, 2), seed=7, trials=6)
    a = triangle_in_blocks_rate(4, params, 3).to_json()
    b = triangle_in_blocks_rate(4, params, 3).to_json()
    assert a == b and "wall_time" not in a


def test_threads_match_serial():
    params = GnpParams(12, Fraction(1, 2), seed=7, trials=8)
    assert fr_vanishing_rate(4, params, threads=2).to_json() == fr_vanishing_rate(4, params).to_json()
