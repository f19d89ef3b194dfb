import random
from fractions import Fraction

import pytest

from harary.graph import (
    canonical_code, enumerate_graphs, enumerate_trees, make_named,
)
from harary.mates import (
    Invariant, classify, compare_dp, distinguishability_index, fingerprint, mates_of,
    parse_invariant, unique_graphs,
)
from harary.properties import EDGELESS, InducedFree


def test_parse_invariant():
    assert parse_invariant("chromatic").id == "chromatic"
    assert parse_invariant("harary:(du C4)").id == "harary:(du C4)"
    assert parse_invariant("fr4").id == "fr4"
    assert parse_invariant("harary", "edgeless").prop == EDGELESS
    for bad in ("nonsense", "fr2", "harary", "ind:edgeless"):
        with pytest.raises(ValueError):
            parse_invariant(bad)


def test_trees_one_chromatic_class():
    for n in range(1, 8):
        cls = classify(enumerate_trees(n), "chromatic")
        assert len(cls.classes) == 1


def test_isomorphic_inputs_collapse():
    c4 = make_named("C", 4)
    cls = classify([c4, c4.relabel([1, 0, 3, 2]), make_named("P", 4)], "chromatic")
    assert cls.total_count == 2


def test_chromatic_index_order_5():
    assert distinguishability_index(5, "chromatic") == Fraction(8, 17)


def test_fingerprint_permutation_invariant():
    rng = random.Random(3)
    invs = [Invariant("chromatic"), Invariant("ind"), Invariant("dom"), Invariant("char"),
            Invariant("harary", InducedFree(make_named("P", 3), "P3")), Invariant("fr3")]
    for g in enumerate_graphs(5):
        h = g.relabel(rng.sample(range(5), 5))
        for inv in invs:
            assert fingerprint(g, inv) == fingerprint(h, inv)


def test_fingerprint_distinguishes_invariants():
    c4 = make_named("C", 4)
    assert fingerprint(c4, "ind").data != fingerprint(c4, "clique").data


def test_zero_flag():
    assert fingerprint(make_named("C", 5), "fr4").is_zero
    assert not fingerprint(make_named("C", 4), "fr4").is_zero


def test_ind_mates_cycle_and_d():
    for n in range(4, 8):
        found = mates_of(make_named("C", n), [n], "ind")
        d = canonical_code(make_named("D", n))
        assert d in {canonical_code(h) for h in found}


def test_unique_graphs():
    codes = {canonical_code(g) for g in unique_graphs(5, "chromatic")}
    assert canonical_code(make_named("K", 5)) in codes
    assert canonical_code(make_named("C", 5)) in codes
    assert canonical_code(make_named("P", 5)) not in codes


def test_classification_json_and_csv():
    cls = classify(enumerate_graphs(4), "chromatic")
    data = cls.to_json()
    assert data["total"] == 11 and data["unique_count"] == cls.unique_count
    assert cls.csv_row()[0] == 4
    assert classify(enumerate_graphs(4), "chromatic").to_json() == data


def test_compare_equivalent_and_ordered():
    graphs = [g for n in range(6) for g in enumerate_graphs(n)]
    assert compare_dp("chromatic", "harary:edgeless", graphs).verdict == "equivalent"
    r = compare_dp("chromatic", "char", graphs)
    assert r.verdict in ("incomparable", "first_below_second", "second_below_first")
    for a, b in r.witnesses:
        assert canonical_code(a) != canonical_code(b)


def test_compare_witnesses_are_real():
    graphs = [g for n in range(1, 7) for g in enumerate_graphs(n)]
    inv = parse_invariant("harary:(explicit C4)")
    r = compare_dp("chromatic", inv, graphs)
    assert r.second_not_first is not None
    assert r.verdict == ("incomparable" if r.first_not_second else "second_below_first")
    if r.first_not_second:
        a, b = r.first_not_second
        assert fingerprint(a, "chromatic") == fingerprint(b, "chromatic")
        assert fingerprint(a, inv) != fingerprint(b, inv)
    a, b = r.second_not_first
    assert fingerprint(a, inv) == fingerprint(b, inv)
    assert fingerprint(a, "chromatic") != fingerprint(b, "chromatic")


def test_refinement_is_transitive():
    # harary(edgeless) and chromatic are equivalent, so both compare the same way to ind
    graphs = list(enumerate_graphs(5))
    a = compare_dp("ind", "chromatic", graphs).verdict
    b = compare_dp("ind", "harary:edgeless", graphs).verdict
    assert a == b


def test_threads_match_serial():
    graphs = list(enumerate_graphs(5))
    assert classify(graphs, "chromatic", threads=2).to_json() == \
        classify(graphs, "chromatic").to_json()
