"""Exact graph polynomials.

Partition-counting (Harary) polynomials live in the falling-factorial basis
as :class:`FFPoly`; everything else is a :class:`MonoPoly` in the monomial
basis. All coefficients are Python ints.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Sequence

import numpy as np

from . import config
from .errors import CapacityError
from .graph import (
    Graph, _induced, bits, canonical_code, complement, component_masks, disjoint_union,
    induced_subgraph, popcount,
)
from .properties import (
    AllGraphs, Cliques, Edgeless, OrderIn, PropertySpec,
)


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


# -- polynomial types --------------------------------------------------------

@dataclass(frozen=True)
class MonoPoly:
    """c_0 + c_1 x + c_2 x^2 + ... with exact integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def x(cls) -> "MonoPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "MonoPoly":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "MonoPoly | int") -> "MonoPoly":
        if isinstance(other, int):
            other = MonoPoly((other,))
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return MonoPoly(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                              for i in range(n)))

    def __neg__(self) -> "MonoPoly":
        return MonoPoly(tuple(-c for c in self.coeffs))

    __radd__ = __add__

    def __sub__(self, other: "MonoPoly | int") -> "MonoPoly":
        return self + (-other)

    def __rsub__(self, other: int) -> "MonoPoly":
        return (-self) + other

    def __mul__(self, other) -> "MonoPoly":
        if isinstance(other, int):
            return MonoPoly(tuple(c * other for c in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return MonoPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return MonoPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MonoPoly":
        out = MonoPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(mag) if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            term = body + mono
            if not terms:
                terms.append(term if c > 0 else "-" + term)
            else:
                terms.append(("+ " if c > 0 else "- ") + term)
        return " ".join(terms)

    def to_json(self) -> dict:
        return {"basis": "monomial", "coeffs": [str(c) for c in self.coeffs]}


@dataclass(frozen=True)
class FFPoly:
    """Sum of h_i * k_(i) over i = 0..n, kept at full length n + 1."""

    coeffs: tuple[int, ...]

    @property
    def h(self) -> tuple[int, ...]:
        return self.coeffs

    def __call__(self, k: int) -> int:
        return evaluate_ff(self, k)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def key(self) -> tuple[int, ...]:
        """Coefficients without trailing zeros: equal keys iff equal polynomials."""
        return _trim(self.coeffs)

    def to_json(self) -> dict:
        return {"basis": "falling", "coeffs": [str(c) for c in self.coeffs]}


def poly_from_json(obj: dict | str) -> FFPoly | MonoPoly:
    if isinstance(obj, str):
        obj = json.loads(obj)
    coeffs = tuple(int(c) for c in obj["coeffs"])
    if obj["basis"] == "falling":
        return FFPoly(coeffs)
    if obj["basis"] == "monomial":
        return MonoPoly(coeffs)
    raise ValueError(f"unknown basis {obj['basis']!r}")


# -- numbers -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), for 0 <= k <= n <= 64."""
    if not 0 <= k <= n <= 64:
        raise ValueError(f"stirling2 needs 0 <= k <= n <= 64, got n={n}, k={k}")
    return _stirling2(n, k)


@lru_cache(maxsize=None)
def stirling1_signed(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind: x_(n) = sum_k s(n,k) x^k."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return stirling1_signed(n - 1, k - 1) - (n - 1) * stirling1_signed(n - 1, k)


def _order_set(a) -> Callable[[int], bool]:
    if isinstance(a, OrderIn):
        return a.admits
    if a is None:
        return lambda s: s >= 1
    if callable(a):
        return a
    values = frozenset(a)
    return values.__contains__


def restricted_stirling2(a, n: int, k: int) -> int:
    """Partitions of [n] into k blocks with every block size in ``a``.

    ``a`` may be an :class:`OrderIn`, a set of sizes, a predicate, or None
    (no restriction). Computed by the block-of-the-first-element recursion.
    """
    if not 0 <= k <= n <= 32:
        raise ValueError(f"restricted_stirling2 needs 0 <= k <= n <= 32, got n={n}, k={k}")
    ok = _order_set(a)
    sizes = tuple(s for s in range(1, n + 1) if ok(s))
    return _restricted(sizes, n, k)


@lru_cache(maxsize=None)
def _restricted(sizes: tuple[int, ...], n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    total = 0
    for s in sizes:
        if s > n:
            break
        total += math.comb(n - 1, s - 1) * _restricted(sizes, n - s, k - 1)
    return total


def falling_factorial(k: int, i: int) -> int:
    if i < 0:
        raise ValueError("falling factorial needs i >= 0")
    out = 1
    for j in range(i):
        out *= k - j
    return out


# -- set partitions ----------------------------------------------------------

def set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted growth strings of length n (each partition of [n] exactly once)."""
    if n == 0:
        yield []
        return
    a = [0] * n
    b = [1] * n  # b[i] = 1 + max(a[0..i-1])
    while True:
        yield a
        i = n - 1
        while i > 0 and a[i] == b[i]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0
            b[j] = max(b[j - 1], a[j - 1] + 1)


def _check_partition_limit(n: int) -> None:
    if n > config.LIMITS.partition:
        raise CapacityError(f"order {n} exceeds partition limit {config.LIMITS.partition}",
                            "partition")


def _block_table(g: Graph, p: PropertySpec) -> list[bool]:
    """Membership of G[B] in P for every vertex subset B (index = bitmask)."""
    n = g.n
    if isinstance(p, AllGraphs):
        return [True] * (1 << n)
    if isinstance(p, OrderIn):
        return [p.admits(popcount(s)) for s in range(1 << n)]
    if isinstance(p, Edgeless):
        ok = [True] * (1 << n)
        for s in range(1, 1 << n):
            low = (s & -s).bit_length() - 1
            rest = s & (s - 1)
            ok[s] = ok[rest] and not (g.adj[low] & rest)
        return ok
    table = [False] * (1 << n)
    for s in range(1 << n):
        table[s] = p.contains(_induced(g, list(bits(s))))
    return table


def harary_counts(g: Graph, p: PropertySpec) -> FFPoly:
    """h_i = number of partitions of V(G) into i blocks, each inducing a member of P."""
    n = g.n
    _check_partition_limit(n)
    if n == 0:
        return FFPoly((1,))
    table = _block_table(g, p)
    # f[S][i]: partitions of S into i valid blocks; the block holding min(S) is peeled off
    full = (1 << n) - 1
    f: list[list[int] | None] = [None] * (1 << n)
    f[0] = [1]
    for s in range(1, full + 1):
        low = s & -s
        rest = s ^ low
        acc = [0] * (popcount(s) + 1)
        sub = rest
        while True:
            block = sub | low
            if table[block]:
                other = f[s ^ block]
                for i, c in enumerate(other):
                    if c:
                        acc[i + 1] += c
            if sub == 0:
                break
            sub = (sub - 1) & rest
        f[s] = acc
    return FFPoly(tuple(f[full]))


def harary_counts_bruteforce(g: Graph, p: PropertySpec) -> FFPoly:
    """Oracle: enumerate every set partition and test each block directly."""
    n = g.n
    if n == 0:
        return FFPoly((1,))
    memo: dict[int, bool] = {}
    h = [0] * (n + 1)
    for rgs in set_partitions(n):
        blocks: dict[int, int] = {}
        for v, b in enumerate(rgs):
            blocks[b] = blocks.get(b, 0) | (1 << v)
        good = True
        for mask in blocks.values():
            ok = memo.get(mask)
            if ok is None:
                ok = memo[mask] = p.contains(induced_subgraph(g, mask))
            if not ok:
                good = False
                break
        if good:
            h[len(blocks)] += 1
    return FFPoly(tuple(h))


def coloring_counts(h: FFPoly) -> list[int]:
    """c_i = i! * h_i (colorings using exactly i colors)."""
    return [math.factorial(i) * c for i, c in enumerate(h.coeffs)]


def evaluate_ff(p: FFPoly, k: int) -> int:
    return sum(c * falling_factorial(k, i) for i, c in enumerate(p.coeffs) if c)


def ff_to_monomial(p: FFPoly) -> MonoPoly:
    out = [0] * len(p.coeffs)
    for i, h in enumerate(p.coeffs):
        if h:
            for j in range(i + 1):
                out[j] += h * stirling1_signed(i, j)
    return MonoPoly(tuple(out))


def harary_poly(g: Graph, p: PropertySpec) -> MonoPoly:
    return ff_to_monomial(harary_counts(g, p))


def fr_counts(g: Graph, r: int) -> FFPoly:
    """F_r: Harary counts for disjoint unions of r-cycles.

    Past the partition limit the counts come from enumerating cycle factors.
    """
    from .graph import make_named
    from .properties import DisjointUnionsOf
    if g.n > config.LIMITS.partition:
        from .experiments import fr_counts_by_cover
        return fr_counts_by_cover(g, r)
    return harary_counts(g, DisjointUnionsOf(make_named("C", r), f"C{r}"))


# -- chromatic polynomial by deletion-contraction ----------------------------

_X = MonoPoly((0, 1))
_chromatic_memo: dict[bytes, MonoPoly] = {}


def _falling_mono(n: int) -> MonoPoly:
    return MonoPoly(tuple(stirling1_signed(n, j) for j in range(n + 1)))


def _chromatic(g: Graph) -> MonoPoly:
    n, m = g.n, g.m
    if m == 0:
        return MonoPoly((0,) * n + (1,))
    if 2 * m == n * (n - 1):
        return _falling_mono(n)
    comps = component_masks(g)
    if len(comps) > 1:
        out = MonoPoly((1,))
        for c in comps:
            out = out * _chromatic(induced_subgraph(g, c))
        return out
    code = canonical_code(g)
    hit = _chromatic_memo.get(code)
    if hit is not None:
        return hit
    if 4 * m <= n * (n - 1):
        # sparse: P(G) = P(G - e) - P(G / e)
        u, v = g.edges()[-1]
        out = _chromatic(g.without_edge(u, v)) - _chromatic(g.contract(u, v))
    else:
        # dense: P(G) = P(G + e) + P(G / e) for a non-edge e
        u, v = next((a, b) for a in range(n) for b in range(a + 1, n) if not g.has_edge(a, b))
        out = _chromatic(g.with_edge(u, v)) + _chromatic(g.contract(u, v))
    _chromatic_memo[code] = out
    return out


def chromatic_dc(g: Graph) -> MonoPoly:
    """Chromatic polynomial via deletion-contraction, memoized on canonical codes."""
    if g.n > config.LIMITS.chromatic:
        raise CapacityError(f"order {g.n} exceeds deletion-contraction limit {config.LIMITS.chromatic}",
                            "chromatic")
    return _chromatic(g)


# -- subset generating functions ---------------------------------------------

def _check_subset_limit(g: Graph) -> None:
    if g.n > config.LIMITS.subset:
        raise CapacityError(f"order {g.n} exceeds subset limit {config.LIMITS.subset}", "subset")


def _subset_sizes(n: int) -> np.ndarray:
    size = np.zeros(1, dtype=np.int8)
    for _ in range(n):
        size = np.concatenate([size, size + 1])
    return size


def _independent_flags(g: Graph) -> np.ndarray:
    flags = np.ones(1, dtype=bool)
    for k in range(g.n):
        lower = np.arange(1 << k, dtype=np.int64)
        flags = np.concatenate([flags, flags & ((lower & g.adj[k]) == 0)])
    return flags


def _count_by_size(flags: np.ndarray, n: int) -> MonoPoly:
    counts = np.bincount(_subset_sizes(n)[flags], minlength=n + 1)
    return MonoPoly(tuple(int(c) for c in counts))


def independence_poly(g: Graph) -> MonoPoly:
    _check_subset_limit(g)
    return _count_by_size(_independent_flags(g), g.n)


def clique_poly(g: Graph) -> MonoPoly:
    """Counts of vertex subsets inducing a complete graph (the empty set excluded)."""
    _check_subset_limit(g)
    if g.n == 0:
        return MonoPoly(())
    flags = _independent_flags(complement(g))
    flags[0] = False
    return _count_by_size(flags, g.n)


def domination_poly(g: Graph) -> MonoPoly:
    _check_subset_limit(g)
    n = g.n
    cover = np.zeros(1, dtype=np.int64)
    for k in range(n):
        cover = np.concatenate([cover, cover | (g.adj[k] | (1 << k))])
    return _count_by_size(cover == (1 << n) - 1, n)


def subset_generating(g: Graph, p: PropertySpec) -> MonoPoly:
    """Sum over vertex subsets S with G[S] in P of x^|S|."""
    _check_subset_limit(g)
    if isinstance(p, Edgeless):
        return independence_poly(g)
    if isinstance(p, Cliques):
        return clique_poly(g)
    n = g.n
    counts = [0] * (n + 1)
    if p.hereditary:
        # members are closed downward: grow subsets in increasing vertex order, prune on failure
        if p.contains(Graph(0)):
            counts[0] += 1

        def grow(mask, last, size):
            for v in range(last + 1, n):
                s = mask | (1 << v)
                if p.contains(_induced(g, list(bits(s)))):
                    counts[size + 1] += 1
                    grow(s, v, size + 1)

        grow(0, -1, 0)
    else:
        for s in range(1 << n):
            if p.contains(_induced(g, list(bits(s)))):
                counts[popcount(s)] += 1
    return MonoPoly(tuple(counts))


def subset_generating_bruteforce(g: Graph, p: PropertySpec) -> MonoPoly:
    counts = [0] * (g.n + 1)
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            if p.contains(_induced(g, combo)):
                counts[size] += 1
    return MonoPoly(tuple(counts))


# -- matchings ---------------------------------------------------------------

def matching_counts(g: Graph) -> list[int]:
    """m_i: number of i-edge matchings, i = 0..n//2."""
    _check_subset_limit(g)
    memo: dict[int, tuple[int, ...]] = {0: (1,)}

    def count(mask: int) -> tuple[int, ...]:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        out = list(count(rest))
        for u in bits(g.adj[v] & rest):
            sub = count(rest & ~(1 << u))
            if len(out) < len(sub) + 1:
                out += [0] * (len(sub) + 1 - len(out))
            for i, c in enumerate(sub):
                out[i + 1] += c
        res = tuple(out)
        memo[mask] = res
        return res

    m = list(count(g.vertex_mask))
    return m + [0] * (g.n // 2 + 1 - len(m))


def matching_polys(g: Graph) -> tuple[MonoPoly, MonoPoly]:
    """(M, mu): generating matching polynomial and matching defect polynomial."""
    m = matching_counts(g)
    n = g.n
    mu = [0] * (n + 1)
    for i, c in enumerate(m):
        if 2 * i <= n:
            mu[n - 2 * i] += (-1) ** i * c
    return MonoPoly(tuple(m)), MonoPoly(tuple(mu))


# -- spectral polynomials ----------------------------------------------------

def _charpoly(a: list[list[int]]) -> MonoPoly:
    """det(xI - A) by the Faddeev-LeVerrier recurrence (divisions are exact)."""
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = [[sum(a[i][t] * m[t][j] for t in range(n) if a[i][t]) for j in range(n)]
              for i in range(n)]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            am[i][i] += c_prev
        m = am
        # c_{n-k} = -tr(A M_k) / k
        tr = sum(a[i][t] * m[t][i] for i in range(n) for t in range(n) if a[i][t])
        q, r = divmod(-tr, k)
        if r:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = q
    return MonoPoly(tuple(coeffs))


def _check_spectral(g: Graph) -> None:
    if g.n > config.LIMITS.spectral:
        raise CapacityError(f"order {g.n} exceeds spectral limit {config.LIMITS.spectral}",
                            "spectral")


def adjacency_matrix(g: Graph) -> list[list[int]]:
    return [[g.adj[i] >> j & 1 for j in range(g.n)] for i in range(g.n)]


def laplacian_matrix(g: Graph) -> list[list[int]]:
    return [[(g.degree(i) if i == j else -(g.adj[i] >> j & 1)) for j in range(g.n)]
            for i in range(g.n)]


def characteristic_poly(g: Graph) -> MonoPoly:
    _check_spectral(g)
    return _charpoly(adjacency_matrix(g))


def laplacian_poly(g: Graph) -> MonoPoly:
    _check_spectral(g)
    return _charpoly(laplacian_matrix(g))


def not_harary_witness(value_at_1: int) -> bool:
    """True iff F(G;1) is neither 0 nor 1, so F(G;x) cannot be any chi_P(G;x)."""
    return value_at_1 not in (0, 1)


def multiplicativity_defect(p: PropertySpec, g: Graph, h: Graph) -> int | None:
    """Smallest k with chi_P(G+H;k) != chi_P(G;k) chi_P(H;k), or None if none in 0..|G|+|H|."""
    u = harary_counts(disjoint_union(g, h), p)
    a, b = harary_counts(g, p), harary_counts(h, p)
    for k in range(g.n + h.n + 1):
        if evaluate_ff(u, k) != evaluate_ff(a, k) * evaluate_ff(b, k):
            return k
    return None
