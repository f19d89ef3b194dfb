import pytest

from harary.errors import PropertySyntaxError
from harary.graph import Graph, disjoint_union, enumerate_graphs, make_named, star_graph
from harary.properties import (
    ALL_GRAPHS, CLIQUES, EDGELESS, EMPTY, ComponentOrderAtMost, DisjointUnionsOf, ExplicitSet,
    InducedFree, OrderIn, builtin_properties, is_compton_gessel_upto,
    is_hereditary_upto, parse_property, speed, speed_by_automorphisms,
)

C3, C4 = make_named("C", 3), make_named("C", 4)
P3 = make_named("P", 3)


def test_atoms():
    assert EDGELESS.contains(Graph(0)) and EDGELESS.contains(make_named("E", 3))
    assert not EDGELESS.contains(make_named("K", 2))
    assert CLIQUES.contains(make_named("K", 4)) and not CLIQUES.contains(Graph(0))
    assert not CLIQUES.contains(make_named("E", 2))
    assert ALL_GRAPHS.contains(C4) and not EMPTY.contains(C4)


def test_parametrized():
    p2 = ComponentOrderAtMost(2)
    assert p2.contains(make_named("mC", 1, 3)) is False
    assert p2.contains(disjoint_union(make_named("K", 2), make_named("E", 3)))
    du = DisjointUnionsOf(C3, "C3")
    assert du.contains(make_named("mC", 3, 3)) and not du.contains(Graph(0))
    assert not du.contains(disjoint_union(C3, make_named("K", 1)))
    free = InducedFree(P3, "P3")
    assert free.contains(disjoint_union(make_named("K", 3), make_named("K", 2)))
    assert not free.contains(make_named("P", 4))
    assert free.contains(C3) and not free.contains(C4)


def test_order_in():
    a = OrderIn(frozenset({2, 3}))
    assert a.contains(make_named("P", 3)) and not a.contains(C4)
    m = OrderIn(residue=0, modulus=3)
    assert m.contains(make_named("E", 6)) and not m.contains(C4)
    assert not m.contains(Graph(0))


def test_explicit_set_is_up_to_isomorphism():
    p = ExplicitSet.of(C4)
    assert p.contains(C4.relabel([2, 0, 3, 1]))
    assert not p.contains(star_graph(3))
    assert p.is_trivial


def test_boolean_laws():
    props = [EDGELESS, CLIQUES, ComponentOrderAtMost(2), InducedFree(P3, "P3")]
    census = [g for n in range(6) for g in enumerate_graphs(n)]
    for p in props:
        for q in props:
            for g in census:
                assert (p | q).contains(g) == (p.contains(g) or q.contains(g))
                assert (p & q).contains(g) == (p.contains(g) and q.contains(g))
                assert (~(p | q)).contains(g) == ((~p) & (~q)).contains(g)
                assert (~~p).contains(g) == p.contains(g)


def test_hereditary_checks():
    for p in (EDGELESS, CLIQUES, ComponentOrderAtMost(2), InducedFree(P3, "P3")):
        assert is_hereditary_upto(p, 6).holds, p
    rep = is_hereditary_upto(DisjointUnionsOf(C3, "C3"), 6)
    assert not rep.holds and rep.witness is not None


def test_compton_gessel_checks():
    for p in (EDGELESS, ALL_GRAPHS, ComponentOrderAtMost(2), DisjointUnionsOf(C3, "C3"),
              InducedFree(P3, "P3")):
        assert is_compton_gessel_upto(p, 6).holds, p
    for p in (CLIQUES, ExplicitSet.of(make_named("K", 3)), OrderIn(frozenset({1, 2}))):
        assert not is_compton_gessel_upto(p, 6).holds, p


def test_speed():
    assert speed(ALL_GRAPHS, 4) == (64, 11)
    assert speed(EDGELESS, 5) == (1, 1)
    assert speed(ComponentOrderAtMost(2), 4) == (10, 3)
    for p in builtin_properties():
        for n in range(1, 6):
            assert speed(p, n) == speed_by_automorphisms(p, n)


@pytest.mark.parametrize("text", [
    "edgeless", "cliques", "all", "none", "(mcc 2)", "(du C3)", "(induced-free P3)",
    "(order-in 1 2)", "(order-mod 0 3)", "(explicit C4 K3)", "(union edgeless cliques)",
    "(intersection (free P3) (mcc 3))", "(not (du C4))", "(explicit (mc 2 3))",
])
def test_parse_roundtrip(text):
    p = parse_property(text)
    q = parse_property(str(p))
    census = [g for n in range(6) for g in enumerate_graphs(n)]
    assert all(p.contains(g) == q.contains(g) for g in census)


@pytest.mark.parametrize("text,pos", [
    ("", 0), ("(mcc", 4), ("(mcc x)", 5), ("(frob 1)", 1), ("(union edgeless)", 1),
    ("edgeless extra", 9), ("(du K9x)", 4), ("(du (mc 2 3))", 1),
])
def test_parse_errors(text, pos):
    with pytest.raises(PropertySyntaxError) as info:
        parse_property(text)
    assert info.value.position == pos


def test_named_graph_tokens():
    p = parse_property("(explicit K1,3)")
    assert p.contains(star_graph(3))
