"""Binomial edge ideals, lex Groebner bases over GF(p), and their initial ideals.

Variables are ordered x1 > ... > xn > y1 > ... > yn.  A monomial is a tuple of
2n exponents in that order, so Python tuple comparison is exactly lex order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .blocks import is_tree
from .graph import Graph, GraphError

DEFAULT_CHAR = 32003

Monomial = tuple[int, ...]


class NonSquarefreeError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_char(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    return p


@dataclass(frozen=True)
class FieldElement:
    residue: int
    p: int = DEFAULT_CHAR

    def __post_init__(self) -> None:
        object.__setattr__(self, "residue", self.residue % self.p)

    def _coerce(self, other: FieldElement | int) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.residue
        return other % self.p

    def __add__(self, other):
        return FieldElement(self.residue + self._coerce(other), self.p)

    def __sub__(self, other):
        return FieldElement(self.residue - self._coerce(other), self.p)

    def __mul__(self, other):
        return FieldElement(self.residue * self._coerce(other), self.p)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.residue, self.p)

    def inverse(self) -> FieldElement:
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(pow(self.residue, -1, self.p), self.p)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.p).inverse()


# -- polynomials ---------------------------------------------------------------

def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


@dataclass(frozen=True)
class Polynomial:
    """Terms ``(monomial, coefficient)`` strictly decreasing in lex; coefficients in 1..p-1."""

    terms: tuple[tuple[Monomial, int], ...]
    p: int = DEFAULT_CHAR

    @classmethod
    def from_dict(cls, d: dict[Monomial, int], p: int) -> Polynomial:
        return cls(tuple(sorted(((m, c % p) for m, c in d.items() if c % p), reverse=True)), p)

    def to_dict(self) -> dict[Monomial, int]:
        return dict(self.terms)

    @property
    def lead(self) -> Monomial:
        return self.terms[0][0]

    @property
    def nvars(self) -> int:
        return len(self.terms[0][0]) if self.terms else 0

    def __bool__(self) -> bool:
        return bool(self.terms)

    def monic(self) -> Polynomial:
        inv = pow(self.terms[0][1], -1, self.p)
        return Polynomial(tuple((m, c * inv % self.p) for m, c in self.terms), self.p)

    def format(self) -> str:
        n = self.nvars // 2
        out = []
        for i, (mono, c) in enumerate(self.terms):
            s = c if c <= self.p // 2 else c - self.p
            factors = []
            for k, e in enumerate(mono):
                if e:
                    var = f"x{k + 1}" if k < n else f"y{k - n + 1}"
                    factors.append(var if e == 1 else f"{var}^{e}")
            body = "*".join([str(abs(s))] + factors)
            if i == 0:
                out.append(body if s > 0 else "-" + body)
            else:
                out.append(("+ " if s > 0 else "- ") + body)
        return " ".join(out) if out else "0"


def x_var(i: int, n: int) -> int:
    return i - 1


def y_var(j: int, n: int) -> int:
    return n + j - 1


def edge_binomials(g: Graph, p: int = DEFAULT_CHAR) -> list[Polynomial]:
    """``x_i y_j - x_j y_i`` for each edge ``i < j``."""
    n = g.n
    polys = []
    for i, j in g.sorted_edges():
        a = [0] * (2 * n)
        a[x_var(i, n)] = a[y_var(j, n)] = 1
        b = [0] * (2 * n)
        b[x_var(j, n)] = b[y_var(i, n)] = 1
        polys.append(Polynomial.from_dict({tuple(a): 1, tuple(b): -1}, p))
    return polys


# -- Buchberger ----------------------------------------------------------------

def _normal_form(f: dict[Monomial, int], basis: list[dict[Monomial, int]], leads: list[Monomial],
                 p: int) -> dict[Monomial, int]:
    """Full reduction of ``f`` modulo a list of monic polynomials."""
    f = dict(f)
    rem: dict[Monomial, int] = {}
    while f:
        m = max(f)
        c = f.pop(m)
        for g, lm in zip(basis, leads):
            if _divides(lm, m):
                q = _mono_div(m, lm)
                for gm, gc in g.items():
                    if gm == lm:
                        continue
                    t = _mono_mul(gm, q)
                    v = (f.get(t, 0) - c * gc) % p
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
    return rem


def _monic(f: dict[Monomial, int], p: int) -> dict[Monomial, int]:
    inv = pow(f[max(f)], -1, p)
    return {m: c * inv % p for m, c in f.items()}


def _spoly(f: dict[Monomial, int], g: dict[Monomial, int], lf: Monomial, lg: Monomial,
           p: int) -> dict[Monomial, int]:
    # both inputs monic
    l = _lcm(lf, lg)
    uf, ug = _mono_div(l, lf), _mono_div(l, lg)
    out: dict[Monomial, int] = {}
    for m, c in f.items():
        t = _mono_mul(m, uf)
        out[t] = (out.get(t, 0) + c) % p
    for m, c in g.items():
        t = _mono_mul(m, ug)
        out[t] = (out.get(t, 0) - c) % p
    return {m: c for m, c in out.items() if c}


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Polynomial, ...]
    p: int

    @property
    def leads(self) -> list[Monomial]:
        return [f.lead for f in self.elements]

    def dump(self) -> str:
        return "".join(f.format() + "\n" for f in self.elements)


def buchberger_reduced_gb(gens: Sequence[Polynomial], p: int = DEFAULT_CHAR) -> GroebnerBasis:
    """Reduced lex Groebner basis by Buchberger's algorithm.

    Pairs are taken by the normal strategy (smallest lcm first) and pruned with
    the product and chain criteria.
    """
    check_char(p)
    if not gens:
        raise ValueError("need at least one generator")
    if any(g.p != p for g in gens):
        raise ValueError(f"generators are not over GF({p})")
    polys = [_monic(g.to_dict(), p) for g in gens if g]
    basis: list[dict[Monomial, int]] = []
    leads: list[Monomial] = []
    pending: set[tuple[int, int]] = set()
    queue: list[tuple[Monomial, int, int]] = []

    def add(f: dict[Monomial, int]) -> None:
        k = len(basis)
        basis.append(f)
        leads.append(max(f))
        for i in range(k):
            pending.add((i, k))
            heapq.heappush(queue, (_lcm(leads[i], leads[k]), i, k))

    for f in polys:
        add(f)

    while queue:
        _, i, j = heapq.heappop(queue)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        li, lj = leads[i], leads[j]
        if _coprime(li, lj):
            continue
        l = _lcm(li, lj)
        if any(k != i and k != j and _divides(leads[k], l)
               and (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending
               for k in range(len(basis))):
            continue
        h = _normal_form(_spoly(basis[i], basis[j], li, lj, p), basis, leads, p)
        if h:
            add(_monic(h, p))

    return GroebnerBasis(tuple(_interreduce(basis, leads, p)), p)


def _interreduce(basis: list[dict[Monomial, int]], leads: list[Monomial], p: int) -> list[Polynomial]:
    keep = []
    for i, li in enumerate(leads):
        dominated = any(
            _divides(lk, li) and (lk != li or k < i)
            for k, lk in enumerate(leads) if k != i)
        if not dominated:
            keep.append(i)
    kept = [basis[i] for i in keep]
    kept_leads = [leads[i] for i in keep]
    out = []
    for idx, (f, lf) in enumerate(zip(kept, kept_leads)):
        others = [g for k, g in enumerate(kept) if k != idx]
        other_leads = [lg for k, lg in enumerate(kept_leads) if k != idx]
        tail = {m: c for m, c in f.items() if m != lf}
        red = _normal_form(tail, others, other_leads, p)
        red[lf] = f[lf]
        out.append(Polynomial.from_dict(_monic(red, p), p))
    out.sort(key=lambda f: f.lead, reverse=True)
    return out


def spoly_residuals(gb: GroebnerBasis) -> list[tuple[int, int]]:
    """Index pairs whose S-polynomial does not reduce to zero (empty for a Groebner basis)."""
    basis = [f.to_dict() for f in gb.elements]
    leads = gb.leads
    bad = []
    for i, j in combinations(range(len(basis)), 2):
        s = _spoly(basis[i], basis[j], leads[i], leads[j], gb.p)
        if _normal_form(s, basis, leads, gb.p):
            bad.append((i, j))
    return bad


# -- monomial ideals -----------------------------------------------------------

def _minimalize(monos: Iterable[Monomial]) -> tuple[Monomial, ...]:
    uniq = sorted(set(monos), key=lambda m: (sum(m), m))
    kept: list[Monomial] = []
    for m in uniq:
        if not any(_divides(k, m) for k in kept):
            kept.append(m)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Monomial, ...]
    nvars: int

    @classmethod
    def from_monomials(cls, monos: Iterable[Monomial], nvars: int) -> MonomialIdeal:
        return cls(_minimalize(monos), nvars)

    @property
    def squarefree(self) -> bool:
        return all(e <= 1 for m in self.generators for e in m)

    def masks(self) -> list[int]:
        """Generator supports as bitmasks (bit k = variable k)."""
        return [sum(1 << k for k, e in enumerate(m) if e) for m in self.generators]

    def format(self) -> list[str]:
        n = self.nvars // 2
        out = []
        for m in self.generators:
            out.append("*".join((f"x{k + 1}" if k < n else f"y{k - n + 1}") + (f"^{e}" if e > 1 else "")
                                for k, e in enumerate(m) if e))
        return out


def initial_ideal(gb: GroebnerBasis, nvars: int | None = None) -> MonomialIdeal:
    nv = nvars if nvars is not None else (gb.elements[0].nvars if gb.elements else 0)
    ideal = MonomialIdeal.from_monomials(gb.leads, nv)
    if not ideal.squarefree:
        bad = [g for g in ideal.format() if "^" in g]
        raise NonSquarefreeError(f"initial ideal is not squarefree: {bad}")
    return ideal


def admissible_initial_ideal(t: Graph) -> MonomialIdeal:
    """Initial ideal of a tree's binomial edge ideal read off its admissible paths."""
    if not is_tree(t):
        raise GraphError("admissible_initial_ideal needs a tree")
    n = t.n
    monos = []
    for i in t.vertices:
        # unique path from i to every vertex, by search
        parent = {i: 0}
        order = [i]
        for u in order:
            for w in t.adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
        for j in range(i + 1, n + 1):
            internal = []
            w = parent[j]
            while w != i:
                internal.append(w)
                w = parent[w]
            if any(i < k < j for k in internal):
                continue
            m = [0] * (2 * n)
            m[x_var(i, n)] = m[y_var(j, n)] = 1
            for k in internal:
                if k > j:
                    m[x_var(k, n)] = 1
                else:
                    m[y_var(k, n)] = 1
            monos.append(tuple(m))
    return MonomialIdeal.from_monomials(monos, 2 * n)


def binomial_edge_initial_ideal(g: Graph, p: int = DEFAULT_CHAR, route: str = "buchberger") -> MonomialIdeal:
    """Squarefree initial ideal of J_G via ``buchberger`` or (trees only) ``paths``."""
    if route == "paths":
        return admissible_initial_ideal(g)
    if route != "buchberger":
        raise ValueError(f"unknown Groebner route {route!r}")
    if not g.edges:
        return MonomialIdeal((), 2 * g.n)
    gb = buchberger_reduced_gb(edge_binomials(g, p), p)
    return initial_ideal(gb, 2 * g.n)
