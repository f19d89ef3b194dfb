import json

import pytest

from harary.config import limits
from harary.errors import CapacityError
from harary.graph import Graph, complement, enumerate_graphs, make_named, star_graph
from harary.polynomials import (
    FFPoly, MonoPoly, characteristic_poly, chromatic_dc, clique_poly, coloring_counts,
    domination_poly, evaluate_ff, falling_factorial, ff_to_monomial, fr_counts, harary_counts,
    harary_counts_bruteforce, independence_poly, laplacian_poly, matching_polys,
    multiplicativity_defect, poly_from_json, restricted_stirling2, set_partitions, stirling1_signed,
    stirling2, subset_generating, subset_generating_bruteforce,
)
from harary.properties import (
    ALL_GRAPHS, CLIQUES, EDGELESS, ComponentOrderAtMost, InducedFree, OrderIn,
    builtin_properties,
)

C4 = make_named("C", 4)


def test_stirling_small():
    assert [stirling2(5, k) for k in range(6)] == [0, 1, 15, 25, 10, 1]
    assert stirling2(0, 0) == 1 and stirling2(3, 0) == 0
    assert sum(stirling2(10, k) for k in range(11)) == 115975
    # inverse matrices
    for n in range(8):
        for m in range(n + 1):
            s = sum(stirling2(n, k) * stirling1_signed(k, m) for k in range(m, n + 1))
            assert s == (1 if n == m else 0)


def test_stirling_big():
    # S(n, 2) = 2^(n-1) - 1, beyond 64 bits
    assert stirling2(64, 2) == 2 ** 63 - 1
    assert stirling2(64, 32) > 2 ** 64
    with pytest.raises(ValueError):
        stirling2(65, 2)
    with pytest.raises(ValueError):
        stirling2(3, 4)


def test_restricted_stirling_vs_enumeration():
    for allowed in ({1, 2}, {2}, {1, 3}, {2, 3, 4}):
        for n in range(8):
            for k in range(n + 1):
                direct = sum(1 for rgs in set_partitions(n)
                             if (max(rgs) + 1 if rgs else 0) == k
                             and all(rgs.count(b) in allowed for b in set(rgs)))
                assert restricted_stirling2(allowed, n, k) == direct


def test_set_partitions_bell():
    assert [sum(1 for _ in set_partitions(n)) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


def test_falling_factorial():
    assert falling_factorial(5, 2) == 20 and falling_factorial(3, 4) == 0
    assert falling_factorial(7, 0) == 1


def test_monopoly_arithmetic():
    x = MonoPoly.x()
    p = (x + 1) ** 3
    assert p.coeffs == (1, 3, 3, 1)
    assert (p - p).coeffs == () or not any((p - p).coeffs)
    assert (1 - x)(3) == -2
    assert (x * x + x)(4) == 20


def test_c4_values():
    assert characteristic_poly(C4)(1) == -3
    assert laplacian_poly(C4)(1) == -3
    big, small = matching_polys(C4)
    assert big(1) == 7
    # the signed matching polynomial gives -1 at 1 (see the decisions ledger)
    assert small(1) == -1
    assert independence_poly(C4).coeffs == (1, 4, 2)
    assert domination_poly(make_named("K", 2)).coeffs == (0, 2, 1)


def test_chromatic_examples():
    k = MonoPoly.x()
    assert chromatic_dc(make_named("K", 3)) == k * (k - 1) * (k - 2)
    assert chromatic_dc(C4) == (k - 1) ** 4 + (k - 1)
    for n in range(1, 7):
        assert chromatic_dc(make_named("P", n)) == k * (k - 1) ** (n - 1)


@pytest.mark.parametrize("n", range(0, 7))
def test_chromatic_matches_harary(n):
    for g in enumerate_graphs(n):
        assert ff_to_monomial(harary_counts(g, EDGELESS)) == chromatic_dc(g)


@pytest.mark.parametrize("p", builtin_properties() + [OrderIn(frozenset({1, 3}))],
                         ids=str)
def test_dp_matches_rgs(p):
    for n in range(0, 6):
        for g in enumerate_graphs(n):
            assert harary_counts(g, p) == harary_counts_bruteforce(g, p)


def test_all_graphs_is_stirling():
    for g in enumerate_graphs(5):
        assert harary_counts(g, ALL_GRAPHS).h == tuple(stirling2(5, i) for i in range(6))


def test_coloring_counts_and_evaluation():
    h = harary_counts(C4, EDGELESS)
    assert coloring_counts(h) == [0, 0, 2, 12, 24]
    assert [evaluate_ff(h, k) for k in range(5)] == [0, 0, 2, 18, 84]
    assert h(3) == 18


def test_subset_generating():
    for g in enumerate_graphs(5):
        for p in (EDGELESS, CLIQUES, InducedFree(make_named("P", 3), "P3")):
            assert subset_generating(g, p) == subset_generating_bruteforce(g, p)
    assert subset_generating(C4, EDGELESS) == independence_poly(C4)


def test_ind_clique_complement():
    for g in enumerate_graphs(5):
        a, b = independence_poly(g).coeffs, clique_poly(complement(g)).coeffs
        assert a[1:] == b[1:]


def test_domination_small():
    assert domination_poly(star_graph(3)).coeffs == (0, 1, 3, 4, 1)
    assert domination_poly(Graph(0)).coeffs[:1] in ((1,), ())


def test_matching_counts():
    big, small = matching_polys(make_named("K", 4))
    assert big.coeffs == (1, 6, 3)
    assert small.coeffs == (3, 0, -6, 0, 1)


def test_characteristic_poly_k3():
    assert characteristic_poly(make_named("K", 3)).coeffs == (2, 3, 0, -1) or \
        characteristic_poly(make_named("K", 3)).coeffs == (-2, -3, 0, 1)


def test_multiplicativity():
    g, h = make_named("P", 3), make_named("K", 2)
    assert multiplicativity_defect(EDGELESS, g, h) is None
    assert multiplicativity_defect(ComponentOrderAtMost(2), g, h) is None
    assert multiplicativity_defect(CLIQUES, g, h) is not None


def test_fr_counts():
    # F_3 of two triangles is the Stirling row S(2, i) padded to length 7
    h = fr_counts(make_named("mC", 2, 3), 3)
    assert h.key() == (0, 1, 1)
    assert fr_counts(make_named("C", 5), 3).is_zero()
    assert fr_counts(C4, 4).key() == (0, 1)
    # K4 has no induced 4-cycle
    assert fr_counts(make_named("K", 4), 4).is_zero()


def test_json_roundtrip():
    for p in (harary_counts(C4, EDGELESS), chromatic_dc(C4), FFPoly((0,)), MonoPoly((10 ** 40, -1))):
        assert poly_from_json(json.dumps(p.to_json())) == p
    with pytest.raises(ValueError):
        poly_from_json({"basis": "weird", "coeffs": []})


def test_partition_limit():
    with limits(partition=4):
        with pytest.raises(CapacityError):
            harary_counts(make_named("K", 5), EDGELESS)
