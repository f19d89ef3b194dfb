"""Graph properties with decidable membership.

A property is a small immutable tree of constructors. ``prop.contains(g)``
decides membership; ``str(prop)`` prints the s-expression that
:func:`parse_property` reads back.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator

from . import config
from .errors import CapacityError, PropertySyntaxError
from .graph import (
    Graph, _induced, automorphism_count, complete_bipartite, canonical_code, component_masks,
    enumerate_graphs, disjoint_union, induced_subgraph, is_connected, make_named,
    parse_graph6, popcount, write_graph6,
)


class PropertySpec:
    """Base class. Subclasses implement :meth:`contains`."""

    #: closed under induced subgraphs by construction (used only for pruning)
    hereditary = False

    def contains(self, g: Graph) -> bool:
        raise NotImplementedError

    def __contains__(self, g: Graph) -> bool:
        return self.contains(g)

    def __or__(self, other):
        return Union(self, other)

    def __and__(self, other):
        return Intersection(self, other)

    def __invert__(self):
        return Not(self)

    @property
    def is_trivial(self) -> bool:
        return False


@dataclass(frozen=True)
class Edgeless(PropertySpec):
    hereditary = True

    def contains(self, g):
        return not any(g.adj)

    def __str__(self):
        return "edgeless"


@dataclass(frozen=True)
class Cliques(PropertySpec):
    hereditary = True

    def contains(self, g):
        if g.n == 0:
            return False
        full = g.vertex_mask
        return all(row | (1 << u) == full for u, row in enumerate(g.adj))

    def __str__(self):
        return "cliques"


@dataclass(frozen=True)
class AllGraphs(PropertySpec):
    hereditary = True

    def contains(self, g):
        return True

    @property
    def is_trivial(self):
        return True

    def __str__(self):
        return "all"


@dataclass(frozen=True)
class EmptyProperty(PropertySpec):
    hereditary = True

    def contains(self, g):
        return False

    @property
    def is_trivial(self):
        return True

    def __str__(self):
        return "none"


@dataclass(frozen=True)
class ComponentOrderAtMost(PropertySpec):
    """Every connected component has at most ``t`` vertices."""

    t: int
    hereditary = True

    def __post_init__(self):
        if self.t < 1:
            raise ValueError(f"component bound must be positive, got {self.t}")

    def contains(self, g):
        return all(popcount(c) <= self.t for c in component_masks(g))

    def __str__(self):
        return f"(mcc {self.t})"


def _graph_token(g: Graph) -> str:
    return write_graph6(g)


@dataclass(frozen=True)
class DisjointUnionsOf(PropertySpec):
    """Non-empty disjoint unions of copies of a connected graph ``h``."""

    h: Graph
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.h.n == 0 or not is_connected(self.h):
            raise ValueError("disjoint unions are defined for a connected, non-null graph")

    @cached_property
    def _code(self):
        return canonical_code(self.h)

    @cached_property
    def _cycle(self):
        h = self.h
        return h.n >= 3 and h.m == h.n and all(popcount(r) == 2 for r in h.adj)

    def contains(self, g):
        k = self.h.n
        if g.n == 0 or g.n % k or g.m != self.h.m * (g.n // k):
            return False
        if self._cycle:
            # connected 2-regular on k vertices is exactly C_k
            if any(popcount(r) != 2 for r in g.adj):
                return False
            return all(popcount(c) == k for c in component_masks(g))
        for c in component_masks(g):
            if popcount(c) != k:
                return False
            if canonical_code(induced_subgraph(g, c)) != self._code:
                return False
        return True

    def __str__(self):
        return f"(du {self.label or _graph_token(self.h)})"


@dataclass(frozen=True)
class InducedFree(PropertySpec):
    """Graphs with no induced subgraph isomorphic to ``h``."""

    h: Graph
    label: str | None = field(default=None, compare=False)
    hereditary = True

    @cached_property
    def _code(self):
        return canonical_code(self.h)

    @cached_property
    def _degrees(self):
        return sorted(self.h.degrees())

    def contains(self, g):
        k, hm = self.h.n, self.h.m
        if k > g.n:
            return True
        if k == 0:
            return False
        for combo in combinations(range(g.n), k):
            s = 0
            for v in combo:
                s |= 1 << v
            degs = [popcount(g.adj[v] & s) for v in combo]
            if sum(degs) != 2 * hm or sorted(degs) != self._degrees:
                continue
            if canonical_code(_induced(g, combo)) == self._code:
                return False
        return True

    def __str__(self):
        return f"(induced-free {self.label or _graph_token(self.h)})"


@dataclass(frozen=True)
class OrderIn(PropertySpec):
    """Graphs whose order lies in a set A of positive integers.

    A is either an explicit finite set (``values``) or a residue class
    ``n = residue (mod modulus)`` restricted to n >= 1.
    """

    values: frozenset[int] | None = None
    residue: int | None = None
    modulus: int | None = None

    def __post_init__(self):
        if (self.values is None) == (self.modulus is None):
            raise ValueError("give either an explicit set or a residue class")
        if self.values is not None:
            object.__setattr__(self, "values", frozenset(self.values))
            if any(v < 1 for v in self.values):
                raise ValueError("orders must be positive integers")
        else:
            if self.modulus < 1:
                raise ValueError("modulus must be positive")
            object.__setattr__(self, "residue", self.residue % self.modulus)

    def admits(self, n: int) -> bool:
        if n < 1:
            return False
        if self.values is not None:
            return n in self.values
        return n % self.modulus == self.residue

    def contains(self, g):
        return self.admits(g.n)

    def __str__(self):
        if self.values is not None:
            return "(order-in " + " ".join(str(v) for v in sorted(self.values)) + ")"
        return f"(order-mod {self.residue} {self.modulus})"


@dataclass(frozen=True)
class ExplicitSet(PropertySpec):
    """A finite property given by canonical codes."""

    codes: frozenset[bytes]

    @classmethod
    def of(cls, *graphs: Graph) -> "ExplicitSet":
        return cls(frozenset(canonical_code(g) for g in graphs))

    @cached_property
    def _orders(self):
        return frozenset(parse_graph6(c).n for c in self.codes)

    def contains(self, g):
        return g.n in self._orders and canonical_code(g) in self.codes

    @property
    def is_trivial(self):
        return True

    def __str__(self):
        return "(explicit " + " ".join(sorted(c.decode() for c in self.codes)) + ")"


@dataclass(frozen=True)
class Union(PropertySpec):
    left: PropertySpec
    right: PropertySpec

    @property
    def hereditary(self):
        return self.left.hereditary and self.right.hereditary

    def contains(self, g):
        return self.left.contains(g) or self.right.contains(g)

    def __str__(self):
        return f"(union {self.left} {self.right})"


@dataclass(frozen=True)
class Intersection(PropertySpec):
    left: PropertySpec
    right: PropertySpec

    @property
    def hereditary(self):
        return self.left.hereditary and self.right.hereditary

    def contains(self, g):
        return self.left.contains(g) and self.right.contains(g)

    def __str__(self):
        return f"(intersection {self.left} {self.right})"


@dataclass(frozen=True)
class Not(PropertySpec):
    inner: PropertySpec

    def contains(self, g):
        return not self.inner.contains(g)

    def __str__(self):
        return f"(not {self.inner})"


EDGELESS = Edgeless()
CLIQUES = Cliques()
ALL_GRAPHS = AllGraphs()
EMPTY = EmptyProperty()


# -- closure checks ----------------------------------------------------------

@dataclass(frozen=True)
class ClosureReport:
    holds: bool
    checked_up_to: int
    witness: tuple[Graph, Graph] | None = None
    reason: str = ""


def _members(p: PropertySpec, n: int) -> list[Graph]:
    return [g for g in enumerate_graphs(n) if p.contains(g)]


def _check_bound(nmax: int) -> None:
    if nmax > config.LIMITS.enumeration:
        raise CapacityError(f"bound {nmax} exceeds enumeration limit {config.LIMITS.enumeration}",
                            "enumeration")


def is_hereditary_upto(p: PropertySpec, nmax: int) -> ClosureReport:
    """Check closure under (non-empty) induced subgraphs on all members of order <= nmax.

    Single-vertex deletions suffice: every smaller member is itself checked.
    """
    _check_bound(nmax)
    for n in range(2, nmax + 1):
        for g in _members(p, n):
            for v in range(g.n):
                sub = induced_subgraph(g, g.vertex_mask & ~(1 << v))
                if not p.contains(sub):
                    return ClosureReport(False, nmax, (g, sub), f"deleting vertex {v} leaves P")
    return ClosureReport(True, nmax)


def is_compton_gessel_upto(p: PropertySpec, nmax: int) -> ClosureReport:
    """Check closure under disjoint unions and connected components up to order nmax."""
    _check_bound(nmax)
    members = {n: _members(p, n) for n in range(1, nmax + 1)}
    for n in range(1, nmax + 1):
        for g in members[n]:
            comps = component_masks(g)
            if len(comps) < 2:
                continue
            for c in comps:
                sub = induced_subgraph(g, c)
                if not p.contains(sub):
                    return ClosureReport(False, nmax, (g, sub), "component outside P")
    for a in range(1, nmax + 1):
        for b in range(a, nmax + 1 - a):
            for i, g in enumerate(members[a]):
                for h in members[b][i if a == b else 0:]:
                    u = disjoint_union(g, h)
                    if not p.contains(u):
                        return ClosureReport(False, nmax, (g, h), "disjoint union outside P")
    return ClosureReport(True, nmax)


def speed(p: PropertySpec, n: int) -> tuple[int, int]:
    """(labeled, unlabeled) number of order-n graphs in P."""
    _check_bound(n)
    if n <= 5:
        pairs = list(combinations(range(n), 2))
        labeled = 0
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
            labeled += p.contains(g)
        unlabeled = len(_members(p, n))
        return labeled, unlabeled
    members = _members(p, n)
    fact = math.factorial(n)
    return sum(fact // automorphism_count(g) for g in members), len(members)


def speed_by_automorphisms(p: PropertySpec, n: int) -> tuple[int, int]:
    """Speed via orbit counting only (n!/|Aut| per class); cross-checks :func:`speed`."""
    _check_bound(n)
    members = _members(p, n)
    fact = math.factorial(n)
    return sum(fact // automorphism_count(g) for g in members), len(members)


# -- s-expression parsing ----------------------------------------------------

_NAMED = re.compile(r"^([KECPD])(\d+)$")
_BIPARTITE = re.compile(r"^K(\d+),(\d+)$")
_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def parse_graph_token(tok: str) -> Graph:
    """A named graph (``K3``, ``E2``, ``C4``, ``P5``, ``D6``, ``K1,3``) or a graph6 string."""
    m = _NAMED.match(tok)
    if m:
        return make_named(m.group(1), int(m.group(2)))
    m = _BIPARTITE.match(tok)
    if m:
        return complete_bipartite(int(m.group(1)), int(m.group(2)))
    return parse_graph6(tok)


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PropertySyntaxError("unexpected character", pos)
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


_ATOMS = {
    "edgeless": EDGELESS, "proper": EDGELESS,
    "cliques": CLIQUES,
    "all": ALL_GRAPHS,
    "none": EMPTY, "empty": EMPTY,
}


def parse_property(text: str) -> PropertySpec:
    """Parse the s-expression property syntax.

    ::

        edgeless | cliques | all | none
        (mcc t)                 components of order <= t
        (du G)                  disjoint unions of copies of G
        (induced-free G)        no induced copy of G
        (order-in a b ...)      order in a finite set
        (order-mod r m)         order = r (mod m)
        (explicit G ...)        finite set of graphs
        (union P Q ...) | (intersection P Q ...) | (not P)

    ``G`` is a named graph (``K3``, ``C4``, ``P4``, ``E2``, ``D6``),
    ``(mc m r)`` for m disjoint r-cycles, or a graph6 string.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PropertySyntaxError("empty property expression", 0)
    pos = 0

    def take():
        nonlocal pos
        if pos >= len(tokens):
            raise PropertySyntaxError("unexpected end of expression", len(text))
        tok = tokens[pos]
        pos += 1
        return tok

    def expect_close():
        tok, at = take()
        if tok != ")":
            raise PropertySyntaxError(f"expected ')' but found {tok!r}", at)

    def integer():
        tok, at = take()
        try:
            return int(tok)
        except ValueError:
            raise PropertySyntaxError(f"expected an integer, found {tok!r}", at) from None

    def graph_arg():
        tok, at = take()
        if tok == "(":
            head, hat = take()
            if head != "mc":
                raise PropertySyntaxError(f"unknown graph constructor {head!r}", hat)
            m, r = integer(), integer()
            expect_close()
            try:
                return make_named("mC", m, r), f"(mc {m} {r})"
            except Exception as exc:
                raise PropertySyntaxError(str(exc), at) from None
        if tok == ")":
            raise PropertySyntaxError("expected a graph", at)
        try:
            return parse_graph_token(tok), tok
        except Exception as exc:
            raise PropertySyntaxError(f"bad graph {tok!r}: {exc}", at) from None

    def expr():
        tok, at = take()
        if tok != "(":
            if tok == ")":
                raise PropertySyntaxError("unexpected ')'", at)
            try:
                return _ATOMS[tok.lower()]
            except KeyError:
                raise PropertySyntaxError(f"unknown property {tok!r}", at) from None
        head, hat = take()
        head = head.lower()
        try:
            if head == "mcc":
                out = ComponentOrderAtMost(integer())
            elif head == "du":
                g, label = graph_arg()
                out = DisjointUnionsOf(g, label)
            elif head in ("induced-free", "free"):
                g, label = graph_arg()
                out = InducedFree(g, label)
            elif head == "order-in":
                vals = []
                while pos < len(tokens) and tokens[pos][0] != ")":
                    vals.append(integer())
                out = OrderIn(frozenset(vals))
            elif head == "order-mod":
                r, m = integer(), integer()
                out = OrderIn(residue=r, modulus=m)
            elif head == "explicit":
                graphs = []
                while pos < len(tokens) and tokens[pos][0] != ")":
                    graphs.append(graph_arg()[0])
                out = ExplicitSet.of(*graphs)
            elif head in ("union", "intersection", "and", "or"):
                parts = [expr()]
                while pos < len(tokens) and tokens[pos][0] != ")":
                    parts.append(expr())
                if len(parts) < 2:
                    raise PropertySyntaxError(f"{head} needs at least two operands", hat)
                cls = Union if head in ("union", "or") else Intersection
                out = parts[0]
                for q in parts[1:]:
                    out = cls(out, q)
            elif head == "not":
                out = Not(expr())
            else:
                raise PropertySyntaxError(f"unknown constructor {head!r}", hat)
        except ValueError as exc:
            if isinstance(exc, PropertySyntaxError):
                raise
            raise PropertySyntaxError(str(exc), hat) from None
        expect_close()
        return out

    result = expr()
    if pos != len(tokens):
        raise PropertySyntaxError("trailing input", tokens[pos][1])
    return result


def property_description(p: PropertySpec | None) -> str:
    return "" if p is None else str(p)


def builtin_properties() -> list[PropertySpec]:
    """The property families exercised by sweeps and the acceptance suite."""
    return [
        EDGELESS, CLIQUES, ALL_GRAPHS,
        ComponentOrderAtMost(2),
        DisjointUnionsOf(make_named("C", 3), "C3"),
        InducedFree(make_named("P", 3), "P3"),
    ]


def iter_members(p: PropertySpec, n: int) -> Iterator[Graph]:
    _check_bound(n)
    return (g for g in enumerate_graphs(n) if p.contains(g))


__all__ = [
    "PropertySpec", "Edgeless", "Cliques", "AllGraphs", "EmptyProperty", "ComponentOrderAtMost",
    "DisjointUnionsOf", "InducedFree", "OrderIn", "ExplicitSet", "Union", "Intersection", "Not",
    "EDGELESS", "CLIQUES", "ALL_GRAPHS", "EMPTY", "ClosureReport", "is_hereditary_upto",
    "is_compton_gessel_upto", "speed", "speed_by_automorphisms", "parse_property",
    "parse_graph_token", "builtin_properties", "iter_members",
]
