"""Named desk-scale checks, one per verifiable claim.

Each check returns a :class:`CheckResult`. A failing check carries the
graphs and values that break the claim; a check whose census bound exceeds
the active limits is reported as skipped with the limit that fired.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import config
from .errors import CapacityError
from .graph import (
    Graph, canonical_code, component_masks, disjoint_union, empty_graph, enumerate_graphs,
    enumerate_trees, induced_subgraph, make_named, star_graph, write_graph6,
)
from .mates import Invariant, classify, compare_dp, fingerprint
from .polynomials import (
    MonoPoly, characteristic_poly, chromatic_dc, evaluate_ff, ff_to_monomial, fr_counts,
    harary_counts, independence_poly, laplacian_poly, matching_polys, multiplicativity_defect,
    not_harary_witness, restricted_stirling2, set_partitions, stirling2, subset_generating,
    subset_generating_bruteforce, domination_poly,
)
from .properties import (
    ALL_GRAPHS, EDGELESS, ComponentOrderAtMost, DisjointUnionsOf, ExplicitSet,
    OrderIn, PropertySpec, builtin_properties,
    is_compton_gessel_upto, is_hereditary_upto, parse_property, speed,
)


@dataclass
class Scope:
    """Bounds for a run. ``max_order`` caps every census sweep."""

    max_order: int | None = None
    enumeration: int | None = None

    def cap(self, n: int) -> int:
        return n if self.max_order is None else min(n, self.max_order)

    def to_json(self) -> dict:
        return {"max_order": self.max_order, "enumeration": self.enumeration}


@dataclass
class CheckResult:
    id: str
    claim: str
    citation: str
    scope: dict
    verdict: str  # pass | fail | skipped
    details: dict = field(default_factory=dict)
    witness: dict | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        out = {"id": self.id, "claim": self.claim, "citation": self.citation,
               "scope": self.scope, "verdict": self.verdict, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


class UnknownCheckError(KeyError):
    pass


class _Fail(Exception):
    """Raised inside a check body to report a counterexample."""

    def __init__(self, witness: dict):
        super().__init__(witness)
        self.witness = witness


def _g6(g: Graph) -> str:
    return write_graph6(g)


def _census(upto: int, start: int = 0):
    for n in range(start, upto + 1):
        yield from enumerate_graphs(n)


def _require(cond: bool, **witness):
    if not cond:
        raise _Fail({k: _jsonable(v) for k, v in witness.items()})


def _jsonable(v):
    if isinstance(v, Graph):
        return _g6(v)
    if isinstance(v, (MonoPoly,)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, PropertySpec):
        return str(v)
    return v


# -- registry ----------------------------------------------------------------

_REGISTRY: dict[str, tuple[str, str, Callable[[Scope, dict], dict | None]]] = {}


def check(check_id: str, claim: str, citation: str):
    def deco(fn):
        _REGISTRY[check_id] = (claim, citation, fn)
        return fn
    return deco


def check_ids() -> list[str]:
    return list(_REGISTRY)


# -- checks ------------------------------------------------------------------

@check("chk_lemma_value_at_1", "value at k=1 is the membership indicator",
       "chi_P(G;1) = 1 if G in P, 0 otherwise")
def _lemma_value_at_1(scope: Scope, scoped: dict):
    top = scope.cap(6)
    props = builtin_properties()
    # the null graph is excluded: its empty partition gives value 1 for every P
    scoped.update(orders=[1, top], properties=[str(p) for p in props])
    count = 0
    for g in _census(top, 1):
        for p in props:
            v = evaluate_ff(harary_counts(g, p), 1)
            _require(v == int(p.contains(g)), graph=g, property=p, value_at_1=v,
                     member=p.contains(g))
            count += 1
    return {"pairs_checked": count}


@check("chk_facts_coeffs", "h_0, h_1 and h_n behave as stated",
       "h_1 in {0,1}; chi_P(G;k) is monic of degree |V(G)| iff K_1 in P")
def _facts_coeffs(scope: Scope, scoped: dict):
    top = scope.cap(6)
    props = builtin_properties()
    scoped.update(orders=[0, top], properties=[str(p) for p in props])
    k1 = make_named("K", 1)
    for p in props:
        has_k1 = p.contains(k1)
        for g in _census(top):
            h = harary_counts(g, p).coeffs
            n = g.n
            if n == 0:
                _require(h == (1,), graph=g, property=p, h=list(h))
                continue
            _require(h[0] == 0, graph=g, property=p, h=list(h), fact="h_0 = 0")
            _require(h[1] == int(p.contains(g)), graph=g, property=p, h=list(h),
                     fact="h_1 = [G in P]")
            _require((h[n] == 1) == has_k1 and h[n] in (0, 1), graph=g, property=p,
                     h=list(h), fact="h_n = [K_1 in P]")
            mono = ff_to_monomial(harary_counts(g, p))
            monic = mono.degree == n and mono.coeffs[-1] == 1
            _require(monic == has_k1, graph=g, property=p, poly=mono, fact="monic degree n")
    return {}


PAPER_NOT_HARARY = {"char(C4;1)": -3, "Lap(C4;1)": -3, "M(C4;1)": 7, "mu(C4;1)": 7,
                    "IND(C4;1)": 7, "DOM(K2;1)": 3}


def not_harary_values() -> dict[str, int]:
    c4, k2 = make_named("C", 4), make_named("K", 2)
    m, mu = matching_polys(c4)
    return {
        "char(C4;1)": characteristic_poly(c4)(1),
        "Lap(C4;1)": laplacian_poly(c4)(1),
        "M(C4;1)": m(1),
        "mu(C4;1)": mu(1),
        "IND(C4;1)": independence_poly(c4)(1),
        "DOM(K2;1)": domination_poly(k2)(1),
    }


@check("chk_not_harary", "char, Lap, M, mu, IND and DOM are not Harary polynomials",
       "char(C_4;1) = Lap(C_4;1) = -3; M(C_4;1) = mu(C_4;1) = 7; IND(C_4;1) = 7; DOM(K_2;1) = 3")
def _not_harary(scope: Scope, scoped: dict):
    scoped.update(graphs=["C4", "K2"])
    values = not_harary_values()
    for name, v in values.items():
        _require(not_harary_witness(v), polynomial=name, value_at_1=v)
    errata = {k: {"stated": PAPER_NOT_HARARY[k], "computed": v}
              for k, v in values.items() if v != PAPER_NOT_HARARY[k]}
    c4 = make_named("C", 4)
    out = {"computed": values, "stated": PAPER_NOT_HARARY,
           "char(C4)": str(characteristic_poly(c4)), "Lap(C4)": str(laplacian_poly(c4)),
           "M(C4)": str(matching_polys(c4)[0]), "mu(C4)": str(matching_polys(c4)[1])}
    if errata:
        out["errata"] = errata
        out["note"] = ("mu(C4;x) = x^4 - 4x^2 + 2 from its definition; the stated value repeats M. "
                       "mu(C4;1) = -1 still lies outside {0,1}, so the claim stands")
    return out


@check("chk_stirling_allgraphs", "all-graphs property gives Stirling numbers",
       "chi_G(G;k) = sum_i S(n,i) k_(i)")
def _stirling_all(scope: Scope, scoped: dict):
    top = scope.cap(6)
    scoped.update(orders=[0, top])
    for g in _census(top):
        h = harary_counts(g, ALL_GRAPHS).coeffs
        want = tuple(stirling2(g.n, i) for i in range(g.n + 1))
        _require(h == want, graph=g, h=list(h), expected=list(want))
    return {}


def restricted_stirling_oracle(allowed: Callable[[int], bool], n: int, k: int) -> int:
    """Count partitions of [n] into k blocks with admissible sizes by direct enumeration."""
    if n == 0:
        return int(k == 0)
    total = 0
    for rgs in set_partitions(n):
        sizes: dict[int, int] = {}
        for b in rgs:
            sizes[b] = sizes.get(b, 0) + 1
        if len(sizes) == k and all(allowed(s) for s in sizes.values()):
            total += 1
    return total


RESTRICTED_SETS = {
    "{2}": OrderIn(frozenset({2})),
    "{3}": OrderIn(frozenset({3})),
    "{1,2}": OrderIn(frozenset({1, 2})),
    "0 mod 3": OrderIn(residue=0, modulus=3),
}


@check("chk_restricted_stirling", "order-restricted properties give restricted Stirling numbers",
       "chi_{P_A}(H;k) = S_A(n,k) for every H of order n")
def _restricted(scope: Scope, scoped: dict):
    top = scope.cap(6)
    scoped.update(orders=[0, top], sets=list(RESTRICTED_SETS))
    for label, p in RESTRICTED_SETS.items():
        for n in range(top + 1):
            want = [restricted_stirling2(p, n, i) for i in range(n + 1)]
            oracle = [restricted_stirling_oracle(p.admits, n, i) for i in range(n + 1)]
            _require(want == oracle, A=label, n=n, dp=want, oracle=oracle)
            for g in enumerate_graphs(n):
                h = list(harary_counts(g, p).coeffs)
                _require(h == want, A=label, graph=g, h=h, expected=want)
    return {}


def _union_pairs(upto: int):
    graphs = [g for g in _census(upto - 1, 1)]
    for i, g in enumerate(graphs):
        for h in graphs[i:]:
            if g.n + h.n <= upto:
                yield g, h


CG_PROPERTIES = ["edgeless", "all", "(mcc 2)", "(du C3)", "(free P3)"]
NON_CG_PROPERTIES = ["cliques", "(explicit K3)", "(union (explicit K2) edgeless)", "(order-in 1 2)"]


def _split_witness(p: PropertySpec, report) -> tuple[Graph, Graph]:
    g, h = report.witness
    if report.reason != "component outside P":
        return g, h
    for c in component_masks(g):
        if not p.contains(induced_subgraph(g, c)):
            return induced_subgraph(g, c), induced_subgraph(g, g.vertex_mask & ~c)
    raise AssertionError("component witness without an offending component")


@check("chk_cg_multiplicative", "multiplicative exactly for Compton-Gessel classes",
       "chi_P is multiplicative iff P is a Compton-Gessel class")
def _cg(scope: Scope, scoped: dict):
    top = scope.cap(6)
    scoped.update(orders=[1, top], compton_gessel=CG_PROPERTIES, others=NON_CG_PROPERTIES)
    pairs = list(_union_pairs(top))
    for text in CG_PROPERTIES:
        p = parse_property(text)
        rep = is_compton_gessel_upto(p, top)
        _require(rep.holds, property=text, closure_witness=list(rep.witness or ()), reason=rep.reason)
        for g, h in pairs:
            k = multiplicativity_defect(p, g, h)
            _require(k is None, property=text, left=g, right=h, k=k)
    violations = {}
    for text in NON_CG_PROPERTIES:
        p = parse_property(text)
        rep = is_compton_gessel_upto(p, top)
        _require(not rep.holds, property=text, note="expected a closure failure")
        g, h = _split_witness(p, rep)
        k = multiplicativity_defect(p, g, h)
        _require(k is not None, property=text, left=g, right=h, note="no multiplicativity defect")
        violations[text] = {"left": _g6(g), "right": _g6(h), "k": k, "closure": rep.reason}
    return {"pairs_per_property": len(pairs), "violations": violations}


NO_EDGELESS = "(intersection cliques (not (order-in 1)))"


@check("chk_edgeless_vanish", "no edge-less members forces vanishing on E_n",
       "For all n <= n_0, k we have chi_P(E_n, k) = 0. Hence E_j and E_j' are mates")
def _edgeless_vanish(scope: Scope, scoped: dict):
    n0 = scope.cap(6)
    p = parse_property(NO_EDGELESS)
    scoped.update(property=NO_EDGELESS, n0=n0)
    for n in range(1, n0 + 1):
        _require(not p.contains(empty_graph(n)), property=NO_EDGELESS, member=empty_graph(n))
    fps = set()
    for n in range(1, n0 + 1):
        h = harary_counts(empty_graph(n), p)
        _require(h.is_zero(), graph=empty_graph(n), h=list(h.coeffs))
        fps.add(fingerprint(empty_graph(n), "harary", p).data)
    _require(len(fps) == 1, note="edge-less graphs do not share one fingerprint")
    return {"mate_pairs": n0 * (n0 - 1) // 2}


HEREDITARY_MATES = ["(mcc 2)", "(free P3)"]


@check("chk_hereditary_mates", "same-order members of a hereditary property are mates",
       "If for some n there are at least two non-isomorphic graphs G, G' in P(n), "
       "the graphs G, G' are chi_P-mates")
def _hereditary_mates(scope: Scope, scoped: dict):
    top = scope.cap(6)
    scoped.update(orders=[1, top], properties=HEREDITARY_MATES)
    pairs = {}
    for text in HEREDITARY_MATES:
        p = parse_property(text)
        rep = is_hereditary_upto(p, top)
        _require(rep.holds, property=text, witness=list(rep.witness or ()))
        per_n = []
        for n in range(1, top + 1):
            members = [g for g in enumerate_graphs(n) if p.contains(g)]
            want = tuple(stirling2(n, i) for i in range(n + 1))
            for g in members:
                h = harary_counts(g, p).coeffs
                _require(h == want, property=text, graph=g, h=list(h), expected=list(want))
            c = classify(members, "harary", p)
            _require(len(c.classes) <= 1, property=text, n=n, classes=len(c.classes))
            if len(members) >= 2:
                _require(speed(p, n)[1] >= 2, property=text, n=n)
            per_n.append(len(members) * (len(members) - 1) // 2)
        pairs[text] = per_n
    return {"mate_pairs_by_order": pairs}


GEN_CASE_I = "(intersection (free P3) (free K3) (free E3))"


def _member_mate_pairs(p: PropertySpec, n: int) -> int:
    members = [g for g in enumerate_graphs(n) if p.contains(g)]
    c = classify(members, "genfun", p) if members else None
    return sum(len(k.graphs) * (len(k.graphs) - 1) // 2 for k in c.classes) if c else 0


@check("chk_gen_hereditary", "generating functions of hereditary properties have mates",
       "Let P be hereditary and G, H in P both of order n. Then F_P(G;x) = F_P(H;x)")
def _gen_hereditary(scope: Scope, scoped: dict):
    top = scope.cap(6)
    scoped.update(orders=[1, top], properties=["edgeless", "cliques", "(free P3)", GEN_CASE_I])
    for text in ("edgeless", "cliques", "(free P3)", GEN_CASE_I):
        p = parse_property(text)
        rep = is_hereditary_upto(p, top)
        _require(rep.holds, property=text, witness=list(rep.witness or ()))
        for n in range(1, top + 1):
            members = [g for g in enumerate_graphs(n) if p.contains(g)]
            if members:
                c = classify(members, "genfun", p)
                _require(len(c.classes) == 1, property=text, n=n, classes=len(c.classes))
                for g in members:
                    _require(subset_generating(g, p) == subset_generating_bruteforce(g, p),
                             property=text, graph=g)
    # |P(n)| = 1 for every n: members are never mates of each other
    seen = set()
    for n in range(1, top + 1):
        e = empty_graph(n)
        fp = fingerprint(e, "genfun", EDGELESS).data
        _require(fp not in seen, graph=e, note="two edge-less graphs share F_P")
        seen.add(fp)
    # case (ii): A_P infinite, mate pairs grow along the checked range
    p3 = parse_property("(free P3)")
    growth = [_member_mate_pairs(p3, n) for n in range(1, top + 1)]
    _require(all(a <= b for a, b in zip(growth, growth[1:])) and growth[-1] > growth[1],
             property="(free P3)", mate_pairs=growth)
    # case (i): A_P finite; members stop existing at order 6 (Ramsey R(3,3) = 6)
    pi = parse_property(GEN_CASE_I)
    a_p = [n for n in range(1, top + 1) if sum(pi.contains(g) for g in enumerate_graphs(n)) >= 2]
    pairs_i = sum(_member_mate_pairs(pi, n) for n in range(1, top + 1))
    _require(pairs_i >= len(a_p) >= 1, property=GEN_CASE_I, A_P=a_p, mate_pairs=pairs_i)
    return {"free_P3_mate_pairs_by_order": growth, "case_i_A_P": a_p, "case_i_mate_pairs": pairs_i,
            "case_iii": "not desk-verifiable: the mates it asserts are not members and are not "
                        "identified by the argument"}


@check("chk_ind_mates_cn_dn", "C_n and D_n are independence-polynomial mates",
       "C_n and D_n are IND(G;x)-mates")
def _ind_cn_dn(scope: Scope, scoped: dict):
    top = min(8, scope.max_order or 8)
    scoped.update(orders=[4, top])
    shared = {}
    for n in range(4, top + 1):
        c, d = make_named("C", n), make_named("D", n)
        a, b = independence_poly(c), independence_poly(d)
        _require(a == b, C=c, D=d, IND_C=a, IND_D=b)
        _require(subset_generating_bruteforce(c, EDGELESS) == a ==
                 subset_generating_bruteforce(d, EDGELESS), C=c, D=d, note="oracle disagrees")
        _require(canonical_code(c) != canonical_code(d), n=n, note="C_n and D_n isomorphic")
        shared[n] = str(a)
    return {"IND": shared}


@check("chk_ind_unique", "K_n and odd paths are IND-unique among same-order graphs",
       "K_n and P_{2n+1} are IND(G;x)-unique")
def _ind_unique(scope: Scope, scoped: dict):
    top = scope.cap(7)
    scoped.update(orders=[1, top])
    for n in range(1, top + 1):
        uniq = {canonical_code(g) for g in classify(enumerate_graphs(n), "ind").unique()}
        targets = [make_named("K", n)] + ([make_named("P", n)] if n % 2 else [])
        for t in targets:
            _require(canonical_code(t) in uniq, graph=t, n=n, note="has a same-order IND-mate")
    return {}


@check("chk_chromatic_unique", "cycles and cliques are chi-unique; trees of one order are chi-mates",
       "All trees of order n are chi-mates. The graphs C_n and K_n are chi-unique")
def _chromatic_unique(scope: Scope, scoped: dict):
    top = scope.cap(7)
    scoped.update(orders=[1, top])
    for n in range(1, top + 1):
        cls = classify(enumerate_graphs(n), "chromatic")
        uniq = {canonical_code(g) for g in cls.unique()}
        targets = [make_named("K", n)] + ([make_named("C", n)] if n >= 3 else [])
        for t in targets:
            _require(canonical_code(t) in uniq, graph=t, note="has a chromatic mate")
        trees = list(enumerate_trees(n))
        tc = classify(trees, "chromatic")
        _require(len(tc.classes) == 1, n=n, classes=len(tc.classes))
        x = MonoPoly((0, 1))
        want = x * (x - 1) ** (n - 1)
        _require(chromatic_dc(trees[0]) == want, tree=trees[0], poly=chromatic_dc(trees[0]))
    return {}


def _harary_singleton(h: Graph) -> Invariant:
    return Invariant("harary", ExplicitSet.of(h))


@check("chk_dp1_incomparable", "singleton Harary polynomial is d.p.-incomparable to chi",
       "G and G + G are chi_{P_H}-mates")
def _dp1(scope: Scope, scoped: dict):
    trees = list(enumerate_trees(5))
    g, h = trees[0], trees[1]
    gg = disjoint_union(g, g)
    scoped.update(G=_g6(g), H=_g6(h))
    ph = _harary_singleton(h)
    chi = Invariant("chromatic")
    fp = lambda x, inv: fingerprint(x, inv).data  # noqa: E731
    _require(fp(g, chi) == fp(h, chi), note="G, H not chromatic mates", G=g, H=h)
    _require(fp(g, ph) != fp(h, ph), note="G, H are P_H mates", G=g, H=h)
    _require(evaluate_ff(harary_counts(h, ph.prop), 1) == 1, H=h)
    _require(fp(g, chi) != fp(gg, chi), note="G, G+G chromatic mates", G=g)
    _require(harary_counts(g, ph.prop).is_zero() and harary_counts(gg, ph.prop).is_zero(),
             note="chi_PH(G) or chi_PH(G+G) not zero", G=g)
    cmp = compare_dp(ph, chi, [g, h, gg])
    _require(cmp.verdict == "incomparable", verdict=cmp.verdict)
    return {"comparison": cmp.to_json()}


def singleton_table(gi: Graph, gj: Graph) -> dict:
    pi = ExplicitSet.of(gi)
    hi = harary_counts(gi, pi)
    return {
        "chi_i(G_i;1)": evaluate_ff(hi, 1),
        "chi_i(G_i;2)": evaluate_ff(hi, 2),
        "chi_i(G_j) zero": harary_counts(gj, pi).is_zero(),
        "chi_i(G_j+G_j) zero": harary_counts(disjoint_union(gj, gj), pi).is_zero(),
        "chi_i(G_i+G_i;2)": evaluate_ff(harary_counts(disjoint_union(gi, gi), pi), 2),
    }


@check("chk_singleton_table", "singleton properties of connected same-order graphs",
       "each block of a partition into more than one part is too small to induce")
def _singleton_table(scope: Scope, scoped: dict):
    gi, gj = make_named("C", 4), star_graph(3)
    scoped.update(G_i="C4", G_j="K1,3")
    tables = {}
    for a, b, name in ((gi, gj, "C4"), (gj, gi, "K1,3")):
        t = singleton_table(a, b)
        _require(t["chi_i(G_i;1)"] == 1 and t["chi_i(G_j) zero"] and t["chi_i(G_j+G_j) zero"]
                 and t["chi_i(G_i+G_i;2)"] != 0, singleton=name, table=t)
        tables[name] = t
    cmp = compare_dp(_harary_singleton(gi), _harary_singleton(gj),
                     [gi, gj, disjoint_union(gi, gi), disjoint_union(gj, gj)])
    _require(cmp.verdict == "incomparable", verdict=cmp.verdict)
    return {"tables": tables, "comparison": cmp.to_json(),
            "note": "chi_i(G_i;k) = k for k >= 2, since the one-block partition is counted"}


def padded_singleton(g: Graph, parity: int, above: int) -> str:
    """{g} plus every graph of order > ``above`` with order = parity (mod 2)."""
    small = " ".join(str(i) for i in range(1, above + 1))
    return (f"(union (explicit {_g6(g)}) "
            f"(intersection (order-mod {parity} 2) (not (order-in {small}))))")


@check("chk_dp2_disjoint_pairs", "disjoint infinite properties with incomparable Harary polynomials",
       "uncountably many disjoint non-trivial pairs of graph properties")
def _dp2(scope: Scope, scoped: dict):
    bound = 8
    top = scope.cap(6)
    instances = [(make_named("C", 4), star_graph(3)), (make_named("K", 3), make_named("P", 3))]
    scoped.update(witness_order=bound, disjointness_census=top,
                  instances=[[_g6(a), _g6(b)] for a, b in instances])
    out = []
    for gi, gj in instances:
        p = parse_property(padded_singleton(gi, 1, bound))
        q = parse_property(padded_singleton(gj, 0, bound))
        for g in _census(top):
            _require(not (p.contains(g) and q.contains(g)), graph=g, note="properties overlap")
        _require(p.contains(empty_graph(9)) and q.contains(empty_graph(10)),
                 note="padding missing")
        witnesses = [gi, gj, disjoint_union(gi, gi), disjoint_union(gj, gj)]
        cmp = compare_dp(Invariant("harary", p), Invariant("harary", q), witnesses)
        _require(cmp.verdict == "incomparable", verdict=cmp.verdict, P=str(p), Q=str(q))
        # mates of order <= bound ignore the padding above it
        for w in witnesses:
            for padded, bare in ((p, ExplicitSet.of(gi)), (q, ExplicitSet.of(gj))):
                _require(harary_counts(w, padded) == harary_counts(w, bare),
                         graph=w, note="padding changed a small polynomial")
        out.append(cmp.to_json())
    return {"comparisons": out}


def bridged_cycles(r: int, m: int, extra: bool) -> Graph:
    """m disjoint r-cycles chained by bridges between vertex 0 of consecutive cycles.

    With ``extra`` every bridge gets a parallel link between the antipodal
    vertices (vertex 2), which closes no new r-cycle.
    """
    base = make_named("mC", m, r)
    edges = list(base.edges())
    for c in range(m - 1):
        a, b = c * r, (c + 1) * r
        edges.append((a, b))
        if extra:
            edges.append((a + 2, b + 2))
    return Graph.from_edges(r * m, edges)


@check("chk_fr_structure", "F_r vanishing, multiplicativity, Stirling rows and uniqueness",
       "If G is a graph of order n != 0 (mod r) the polynomial F_r(G;k) vanishes; "
       "hence D_m is F_r-unique")
def _fr_structure(scope: Scope, scoped: dict):
    top = scope.cap(7)
    unique_top = scope.cap(8)
    scoped.update(r=[3, 4], vanishing_orders=[1, top], unique_orders=unique_top)
    for r in (3, 4):
        du = DisjointUnionsOf(make_named("C", r), f"C{r}")
        for g, h in list(_union_pairs(min(top, 6))) + [
                (make_named("C", r), make_named("mC", 2, r)),
                (make_named("mC", 2, 4 if r == 4 else 3), make_named("C", r))]:
            if g.n + h.n <= 12:
                k = multiplicativity_defect(du, g, h)
                _require(k is None, r=r, left=g, right=h, k=k)
        for g in _census(top, 1):
            if g.n % r:
                h = fr_counts(g, r)
                _require(h.is_zero(), r=r, graph=g, h=list(h.coeffs))
        for m in range(1, 6):
            h = fr_counts(make_named("mC", m, r), r).coeffs
            want = tuple(stirling2(m, i) for i in range(m + 1))
            _require(h[:m + 1] == want and not any(h[m + 1:]), r=r, m=m, h=list(h))
    from .experiments import fr_counts_by_cover
    unique = {}
    for r in (3, 4):
        for m in range(1, unique_top // r + 1):
            target = make_named("mC", m, r)
            own = canonical_code(target)
            key = fr_counts_by_cover(target, r).key()
            mates = [g for g in enumerate_graphs(r * m)
                     if fr_counts_by_cover(g, r).key() == key and canonical_code(g) != own]
            _require(not mates, r=r, m=m, mates=mates)
            unique[f"{m}C{r}"] = True
    return {"unique": unique}


@check("chk_fr_edge_mates", "edges outside the cycles and extra bridges give F_r-mates",
       "F_r(G;k) = F_r(G_{-e};k)")
def _fr_edge_mates(scope: Scope, scoped: dict):
    from .experiments import induced_cycles
    scoped.update(r=[3, 4], m=[2, 3])
    pairs = []
    for r in (3, 4):
        for m in (2, 3):
            if r * m > config.LIMITS.partition:
                continue
            g = bridged_cycles(r, m, extra=True)
            cycles = set(induced_cycles(g, r))
            _require(len(cycles) == m, r=r, m=m, graph=g, note="extra edge closed a new cycle")
            e = (0, r)  # a bridge position, now backed by the parallel link
            ge = g.without_edge(*e)
            _require(set(induced_cycles(ge, r)) == cycles, r=r, graph=ge)
            a, b = fr_counts(g, r), fr_counts(ge, r)
            _require(a == b, r=r, graph=g, deleted=list(e), h_G=list(a.coeffs), h_Ge=list(b.coeffs))
            _require(canonical_code(g) != canonical_code(ge), graph=g)
            bridged = bridged_cycles(r, m, extra=False)
            c = fr_counts(bridged, r)
            _require(c == a, r=r, bridged=bridged, augmented=g, h_bridged=list(c.coeffs),
                     h_augmented=list(a.coeffs))
            pairs.append({"r": r, "m": m, "G": _g6(g), "G-e": _g6(ge), "h": list(a.coeffs)})
    return {"mate_pairs": pairs}


def _is_bridge(g: Graph, u: int, v: int) -> bool:
    return len(component_masks(g.without_edge(u, v))) > len(component_masks(g))


def _random_graphs(count: int, top: int, seed: int = 2024) -> list[Graph]:
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for _ in range(count):
        n = int(rng.integers(1, top + 1))
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.integers(0, 2)]
        out.append(Graph.from_edges(n, edges))
    return out


@check("chk_chromatic_invariant_axioms", "chi is a chromatic invariant; chi_{P_2} is not",
       "The chromatic polynomial is a chromatic invariant with alpha = 1, beta = -1 and c = x")
def _axioms(scope: Scope, scoped: dict):
    top = scope.cap(8)
    graphs = _random_graphs(40, top)
    scoped.update(random_graphs=len(graphs), max_order=top, seed=2024)
    x = MonoPoly((0, 1))
    for n in range(0, top + 1):
        _require(chromatic_dc(empty_graph(n)) == x ** n, n=n, axiom="(i)")
    edges_checked = 0
    for g in graphs:
        pg = chromatic_dc(g)
        for u, v in g.edges():
            minus = chromatic_dc(g.without_edge(u, v))
            if _is_bridge(g, u, v):
                _require(x * pg == (x - 1) * minus, graph=g, edge=[u, v], axiom="(ii)")
            else:
                _require(pg == minus - chromatic_dc(g.contract(u, v)), graph=g, edge=[u, v],
                         axiom="(iv)")
            edges_checked += 1
    for g, h in zip(graphs[::2], graphs[1::2]):
        if g.n + h.n <= 16:
            _require(chromatic_dc(disjoint_union(g, h)) == chromatic_dc(g) * chromatic_dc(h),
                     left=g, right=h, axiom="(v)")
    # chi_{P_2} breaks deletion-contraction for a non-bridge edge
    p2 = ComponentOrderAtMost(2)
    f = lambda g: ff_to_monomial(harary_counts(g, p2))  # noqa: E731
    violation = None
    for g in _census(scope.cap(5), 1):
        for u, v in g.edges():
            if not _is_bridge(g, u, v) and f(g) != f(g.without_edge(u, v)) - f(g.contract(u, v)):
                violation = {"graph": _g6(g), "edge": [u, v], "f(G)": str(f(g)),
                             "f(G-e)": str(f(g.without_edge(u, v))),
                             "f(G/e)": str(f(g.contract(u, v)))}
                break
        if violation:
            break
    _require(violation is not None, note="no deletion-contraction violation for (mcc 2)")
    return {"edges_checked": edges_checked, "mcc2_violation": violation,
            "loops": "simple graphs have no loops, axiom (iii) is vacuous"}


# -- running -----------------------------------------------------------------

def run_check(check_id: str, scope: Scope | None = None) -> CheckResult:
    if check_id not in _REGISTRY:
        raise UnknownCheckError(check_id)
    scope = scope or Scope()
    claim, citation, fn = _REGISTRY[check_id]
    scoped: dict = {}
    overrides = {"enumeration": scope.enumeration} if scope.enumeration is not None else {}
    try:
        with config.limits(**overrides):
            details = fn(scope, scoped) or {}
    except _Fail as exc:
        return CheckResult(check_id, claim, citation, scoped, "fail", witness=exc.witness)
    except CapacityError as exc:
        return CheckResult(check_id, claim, citation, scoped, "skipped", reason=str(exc))
    return CheckResult(check_id, claim, citation, scoped, "pass", details=_jsonable_dict(details))


def _jsonable_dict(d: dict) -> dict:
    return json.loads(json.dumps(d, default=_jsonable))


def _run_by_id(scope: Scope, check_id: str) -> CheckResult:
    return run_check(check_id, scope)


def run_all(scope: Scope | None = None, only: list[str] | None = None,
            threads: int = 1) -> list[CheckResult]:
    """Run registered checks in registry order; ``only`` filters (unknown ids are dropped)."""
    scope = scope or Scope()
    ids = [c for c in _REGISTRY if only is None or c in only]
    if threads > 1 and len(ids) > 1:
        from functools import partial
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(partial(_run_by_id, scope), ids))
    return [run_check(c, scope) for c in ids]


def text_report(results: list[CheckResult]) -> str:
    lines = []
    for r in results:
        lines.append(f"{r.verdict.upper():7} {r.id}: {r.claim}")
        lines.append(f"        claim: \"{r.citation}\"")
        if r.scope:
            lines.append(f"        scope: {json.dumps(r.scope, sort_keys=True)}")
        if r.reason:
            lines.append(f"        reason: {r.reason}")
        if r.witness:
            lines.append(f"        witness: {json.dumps(r.witness, sort_keys=True)}")
        for key in ("computed", "errata", "IND", "note"):
            if key in r.details:
                lines.append(f"        {key}: {json.dumps(r.details[key], sort_keys=True)}")
    counts = {v: sum(r.verdict == v for r in results) for v in ("pass", "fail", "skipped")}
    lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
    return "\n".join(lines)


def json_report(results: list[CheckResult], scope: Scope | None = None) -> dict:
    return {"scope": (scope or Scope()).to_json(),
            "results": [r.to_json() for r in results],
            "summary": {v: sum(r.verdict == v for r in results) for v in ("pass", "fail", "skipped")}}
