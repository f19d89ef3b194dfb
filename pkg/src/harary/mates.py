"""Mate classes, unique graphs and distinguishing-power comparison.

An invariant is named by a short id (see :data:`INVARIANTS`); ``harary``
and ``genfun`` also take a property, and ``fr<r>`` fixes the cycle length.
A fingerprint is the id followed by the exact coefficient list, so two
graphs share a fingerprint exactly when their polynomials agree.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, Iterable, Sequence

from . import polynomials as poly
from .graph import Graph, canonical_code, enumerate_graphs, parse_graph6, write_graph6
from .polynomials import FFPoly, MonoPoly
from .properties import PropertySpec, parse_property


def _matching(g):
    return poly.matching_polys(g)[0]


def _mu(g):
    return poly.matching_polys(g)[1]


# id -> (needs a property, function)
INVARIANTS: dict[str, tuple[bool, Callable]] = {
    "chromatic": (False, poly.chromatic_dc),
    "harary": (True, poly.harary_counts),
    "genfun": (True, poly.subset_generating),
    "ind": (False, poly.independence_poly),
    "clique": (False, poly.clique_poly),
    "dom": (False, poly.domination_poly),
    "matching": (False, _matching),
    "mu": (False, _mu),
    "char": (False, poly.characteristic_poly),
    "lap": (False, poly.laplacian_poly),
}

_FR = re.compile(r"^fr(\d+)$")


@dataclass(frozen=True)
class Invariant:
    name: str
    prop: PropertySpec | None = None

    def __post_init__(self):
        m = _FR.match(self.name)
        if m:
            if int(m.group(1)) < 3:
                raise ValueError("fr needs a cycle length of at least 3")
            if self.prop is not None:
                raise ValueError(f"invariant {self.name} takes no property")
            return
        if self.name not in INVARIANTS:
            raise ValueError(f"unknown invariant {self.name!r}; known: "
                             f"{', '.join(sorted(INVARIANTS))}, fr<r>")
        needs = INVARIANTS[self.name][0]
        if needs and self.prop is None:
            raise ValueError(f"invariant {self.name} needs a property")
        if not needs and self.prop is not None:
            raise ValueError(f"invariant {self.name} takes no property")

    @property
    def id(self) -> str:
        return f"{self.name}:{self.prop}" if self.prop is not None else self.name

    def __str__(self):
        return self.id

    def compute(self, g: Graph) -> FFPoly | MonoPoly:
        m = _FR.match(self.name)
        if m:
            return poly.fr_counts(g, int(m.group(1)))
        needs, fn = INVARIANTS[self.name]
        return fn(g, self.prop) if needs else fn(g)


def parse_invariant(text: str, prop: PropertySpec | str | None = None) -> Invariant:
    """``chromatic``, ``fr4``, ``harary:(du C4)`` or a name plus a separate property."""
    name, sep, rest = text.partition(":")
    if sep:
        if prop is not None:
            raise ValueError("property given twice")
        prop = rest
    if isinstance(prop, str):
        prop = parse_property(prop)
    return Invariant(name.strip(), prop)


def _as_invariant(inv, prop=None) -> Invariant:
    if isinstance(inv, Invariant):
        return inv
    return parse_invariant(inv, prop)


@dataclass(frozen=True)
class Fingerprint:
    invariant: str
    data: bytes
    is_zero: bool = False

    @property
    def hex(self) -> str:
        return self.data.hex()


def _serialize(inv_id: str, p: FFPoly | MonoPoly) -> bytes:
    if isinstance(p, FFPoly):
        basis, coeffs = b"F", p.key()
    else:
        basis, coeffs = b"M", p.coeffs
    return inv_id.encode() + b"\x00" + basis + b"," .join(str(c).encode() for c in coeffs)


def fingerprint(g: Graph, invariant, prop: PropertySpec | None = None) -> Fingerprint:
    inv = _as_invariant(invariant, prop)
    p = inv.compute(g)
    zero = p.is_zero() if isinstance(p, FFPoly) else not any(p.coeffs)
    return Fingerprint(inv.id, _serialize(inv.id, p), zero)


@dataclass
class MateClass:
    fingerprint: Fingerprint
    graphs: list[Graph]
    codes: list[bytes]


@dataclass
class MateClassification:
    n: int | None
    invariant: str
    classes: list[MateClass]

    @property
    def total_count(self) -> int:
        return sum(len(c.graphs) for c in self.classes)

    @property
    def unique_count(self) -> int:
        return sum(len(c.graphs) == 1 for c in self.classes)

    @property
    def index(self) -> Fraction:
        return Fraction(self.unique_count, self.total_count) if self.total_count else Fraction(1)

    def unique(self) -> list[Graph]:
        return [c.graphs[0] for c in self.classes if len(c.graphs) == 1]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "invariant": self.invariant,
            "classes": [{"fingerprint": c.fingerprint.hex,
                         "graphs": [write_graph6(g) for g in c.graphs]} for c in self.classes],
            "unique_count": self.unique_count,
            "total": self.total_count,
        }

    def csv_row(self) -> list:
        idx = self.index
        return [self.n if self.n is not None else "mixed", self.total_count, len(self.classes),
                self.unique_count, f"{idx.numerator}/{idx.denominator}"]


CSV_HEADER = ["n", "total", "classes", "unique", "index"]


def _fp_worker(inv: Invariant, g6: str) -> Fingerprint:
    return fingerprint(parse_graph6(g6), inv)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HARARY_THREADS", "1")))
    except ValueError:
        return 1


def fingerprints(graphs: Sequence[Graph], inv: Invariant, threads: int = 1) -> list[Fingerprint]:
    if threads > 1 and len(graphs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(partial(_fp_worker, inv), [write_graph6(g) for g in graphs],
                                 chunksize=max(1, len(graphs) // (8 * threads))))
    return [fingerprint(g, inv) for g in graphs]


def _distinct(graphs: Iterable[Graph]) -> list[tuple[bytes, Graph]]:
    """One representative per isomorphism class, sorted by canonical code."""
    seen: dict[bytes, Graph] = {}
    for g in graphs:
        seen.setdefault(canonical_code(g), g)
    return sorted(seen.items())


def classify(graphs: Iterable[Graph], invariant, prop: PropertySpec | None = None,
             threads: int = 1) -> MateClassification:
    """Group isomorphism classes of ``graphs`` by fingerprint.

    Isomorphic inputs collapse to one entry: mates are defined up to isomorphism.
    """
    inv = _as_invariant(invariant, prop)
    items = _distinct(graphs)
    fps = fingerprints([g for _, g in items], inv, threads)
    groups: dict[bytes, MateClass] = {}
    for (code, g), fp in zip(items, fps):
        cls = groups.get(fp.data)
        if cls is None:
            cls = groups[fp.data] = MateClass(fp, [], [])
        cls.graphs.append(g)
        cls.codes.append(code)
    orders = {g.n for _, g in items}
    n = orders.pop() if len(orders) == 1 else None
    return MateClassification(n, inv.id, [groups[k] for k in sorted(groups)])


def unique_graphs(n: int, invariant, prop: PropertySpec | None = None,
                  threads: int = 1) -> list[Graph]:
    return classify(enumerate_graphs(n), invariant, prop, threads).unique()


def distinguishability_index(n: int, invariant, prop: PropertySpec | None = None,
                             domain: PropertySpec | None = None, threads: int = 1) -> Fraction:
    """|unique| / |census| at order n, over all graphs or the members of ``domain``."""
    graphs = enumerate_graphs(n)
    if domain is not None:
        graphs = [g for g in graphs if domain.contains(g)]
    return classify(graphs, invariant, prop, threads).index


def mates_of(g: Graph, orders: Iterable[int], invariant, prop: PropertySpec | None = None,
             threads: int = 1) -> list[Graph]:
    """Census graphs of the given orders that are mates of ``g``."""
    inv = _as_invariant(invariant, prop)
    target = fingerprint(g, inv)
    own = canonical_code(g)
    out = []
    for n in sorted(set(orders)):
        census = list(enumerate_graphs(n))
        for h, fp in zip(census, fingerprints(census, inv, threads)):
            if fp.data == target.data and canonical_code(h) != own:
                out.append(h)
    return out


VERDICTS = ("equivalent", "first_below_second", "second_below_first", "incomparable")


@dataclass
class DpComparison:
    first: str
    second: str
    verdict: str
    # mates under the first invariant but not the second, and the reverse
    first_not_second: tuple[Graph, Graph] | None = None
    second_not_first: tuple[Graph, Graph] | None = None
    checked_up_to: int = 0
    graph_count: int = 0

    @property
    def witnesses(self) -> list[tuple[Graph, Graph]]:
        return [w for w in (self.first_not_second, self.second_not_first) if w is not None]

    def to_json(self) -> dict:
        def pair(w):
            return None if w is None else [write_graph6(w[0]), write_graph6(w[1])]
        return {
            "first": self.first,
            "second": self.second,
            "verdict": self.verdict,
            "witnesses": {"first_not_second": pair(self.first_not_second),
                          "second_not_first": pair(self.second_not_first)},
            "checked_up_to": self.checked_up_to,
            "graphs": self.graph_count,
        }


def _split_witness(items, fa, fb):
    """First pair (in code order) with equal ``fa`` fingerprints and different ``fb`` ones."""
    by_class: dict[bytes, list[int]] = {}
    for i, fp in enumerate(fa):
        by_class.setdefault(fp.data, []).append(i)
    for key in sorted(by_class):
        members = by_class[key]
        head = members[0]
        for j in members[1:]:
            if fb[j].data != fb[head].data:
                return items[head][1], items[j][1]
    return None


def compare_dp(first, second, graphs: Iterable[Graph], threads: int = 1) -> DpComparison:
    """Distinguishing-power relation of two invariants, restricted to ``graphs``.

    ``first`` is below ``second`` when every pair of mates under ``second`` is
    also a pair of mates under ``first`` but not conversely.
    """
    a, b = _as_invariant(first), _as_invariant(second)
    items = _distinct(graphs)
    gs = [g for _, g in items]
    fa, fb = fingerprints(gs, a, threads), fingerprints(gs, b, threads)
    w_ab = _split_witness(items, fa, fb)
    w_ba = _split_witness(items, fb, fa)
    if w_ab and w_ba:
        verdict = "incomparable"
    elif w_ab:
        verdict = "first_below_second"
    elif w_ba:
        verdict = "second_below_first"
    else:
        verdict = "equivalent"
    return DpComparison(a.id, b.id, verdict, w_ab, w_ba,
                        max((g.n for g in gs), default=0), len(gs))
