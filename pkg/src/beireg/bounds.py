"""Spines, bound certificates and closed-form regularity values for block graphs.

The bound for a connected block graph ``G`` whose large blocks (size >= 3) are
all end-blocks, evaluated along a spine ``P`` of length ``ell``, is::

    e2 + ell + b + sum(max(lbd(v), 2) for v off P with bd(v) >= 3)

where ``e2`` counts edges off ``P`` whose endpoints both have block degree at
most 2 and ``b`` counts large end-blocks meeting ``P``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .blocks import BlockDecomposition, block_decomposition, classify, is_tree, longest_induced_path
from .canon import canonical_relabel
from .graph import Graph, GraphError

E2_VARIANTS = ("bridges", "literal")
POLICIES = ("max", "min", "canonical")


class HypothesisError(GraphError):
    """The graph is outside the class the bound applies to."""


@dataclass(frozen=True)
class Spine:
    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> set[tuple[int, int]]:
        vs = self.vertices
        return {(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:])}


@dataclass(frozen=True)
class CEntry:
    vertex: int
    bd: int
    lbd: int

    @property
    def contribution(self) -> int:
        return max(self.lbd, 2)


@dataclass(frozen=True)
class BoundCertificate:
    spine: Spine
    e2: int
    b: int
    c_set: tuple[CEntry, ...]
    dist_to_spine: dict[int, int] = field(compare=False)
    e2_variant: str = "bridges"
    policy: str = "max"

    @property
    def ell(self) -> int:
        return self.spine.length

    @property
    def c_sum(self) -> int:
        return sum(c.contribution for c in self.c_set)

    @property
    def bound(self) -> int:
        return self.e2 + self.ell + self.b + self.c_sum

    def to_dict(self) -> dict:
        return {
            "spine": list(self.spine.vertices),
            "ell": self.ell,
            "e2": self.e2,
            "e2Variant": self.e2_variant,
            "b": self.b,
            "cSet": [{"v": c.vertex, "bd": c.bd, "lbd": c.lbd, "contribution": c.contribution}
                     for c in self.c_set],
            "bound": self.bound,
            "policy": self.policy,
        }


def _require_block_graph(g: Graph, dec: BlockDecomposition) -> None:
    for b in dec.blocks:
        if not g.is_clique(b):
            raise HypothesisError(f"not a block graph: block {sorted(b)} is not complete")


def find_spines(g: Graph, dec: BlockDecomposition | None = None) -> list[Spine]:
    """All longest paths made of bridges, one orientation each (first < last)."""
    dec = dec or block_decomposition(g)
    _require_block_graph(g, dec)
    if not dec.bridges:
        return []
    badj: dict[int, list[int]] = {}
    for u, v in dec.bridges:
        badj.setdefault(u, []).append(v)
        badj.setdefault(v, []).append(u)
    # bridges form a forest, so paths are unique between endpoints
    paths: list[tuple[int, ...]] = []
    best = 0
    for s in sorted(badj):
        parent = {s: 0}
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in badj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
        far = max(dist.values())
        if far < best:
            continue
        if far > best:
            best, paths = far, []
        for t, d in dist.items():
            if d == far and s < t:
                seq = [t]
                while seq[-1] != s:
                    seq.append(parent[seq[-1]])
                paths.append(tuple(reversed(seq)))
    return [Spine(p) for p in sorted(paths)]


def check_hypothesis(g: Graph, dec: BlockDecomposition) -> None:
    _require_block_graph(g, dec)
    for i in dec.large_blocks():
        if not dec.is_end_block(i):
            raise HypothesisError(
                f"large block {sorted(dec.blocks[i])} is not an end-block "
                f"(cut vertices {sorted(dec.block_cut_tree[i])})")


def _distances(g: Graph, sources: Sequence[int]) -> dict[int, int]:
    dist = {s: 0 for s in sources}
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bound_certificate(g: Graph, spine: Spine, variant: str = "bridges",
                      dec: BlockDecomposition | None = None, policy: str = "max") -> BoundCertificate:
    if variant not in E2_VARIANTS:
        raise ValueError(f"unknown e2 variant {variant!r}")
    dec = dec or block_decomposition(g)
    check_hypothesis(g, dec)
    if spine.length < 1:
        raise HypothesisError("spine must have length >= 1")
    on_spine = set(spine.vertices)
    spine_edges = spine.edges()
    if not spine_edges <= dec.bridges:
        raise HypothesisError(f"spine {spine.vertices} uses an edge that is not a bridge")
    pool = dec.bridges if variant == "bridges" else g.edges
    e2 = sum(1 for u, v in pool - spine_edges if dec.bd[u] <= 2 and dec.bd[v] <= 2)
    b = sum(1 for i in dec.large_blocks() if dec.blocks[i] & on_spine)
    c_set = tuple(CEntry(v, dec.bd[v], dec.lbd[v])
                  for v in g.vertices if v not in on_spine and dec.bd[v] >= 3)
    return BoundCertificate(spine, e2, b, c_set, _distances(g, spine.vertices), variant, policy)


def _select(certs: list[BoundCertificate], policy: str, g: Graph) -> BoundCertificate:
    if policy == "max":
        return max(certs, key=lambda c: c.bound)
    if policy == "min":
        return min(certs, key=lambda c: c.bound)
    if policy == "canonical":
        _, mapping = canonical_relabel(g)

        def key(c: BoundCertificate) -> tuple[int, ...]:
            seq = tuple(mapping[v] for v in c.spine.vertices)
            return min(seq, seq[::-1])

        return min(certs, key=key)
    raise ValueError(f"unknown spine policy {policy!r}")


@dataclass(frozen=True)
class TheoremBound:
    value: int
    certificates: tuple[BoundCertificate, ...]
    selected: int | None  # index into certificates; None when a closed form was used


def theorem_bound(g: Graph, variant: str = "bridges", policy: str = "max") -> TheoremBound:
    dec = block_decomposition(g)
    check_hypothesis(g, dec)
    spines = find_spines(g, dec)
    if not spines:
        cls = classify(g)
        if cls.form == "star_of_cliques":
            return TheoremBound(cls.params[0], (), None)
        raise HypothesisError("graph has no bridge (no spine) and is not a star of cliques")
    certs = [bound_certificate(g, s, variant, dec, policy) for s in spines]
    chosen = _select(certs, policy, g)
    return TheoremBound(chosen.bound, tuple(certs), certs.index(chosen))


def tree_bound(t: Graph, policy: str = "max") -> TheoremBound:
    """Tree form of the bound, ``e2 + ell + 2*d3``, from vertex degrees alone."""
    if not is_tree(t):
        raise HypothesisError("tree_bound needs a tree")
    if t.n < 2:
        raise HypothesisError("tree_bound needs at least two vertices")
    dec = block_decomposition(t)
    certs = []
    for spine in find_spines(t, dec):
        on = set(spine.vertices)
        spine_edges = spine.edges()
        e2 = sum(1 for u, v in t.edges - spine_edges if t.degree(u) <= 2 and t.degree(v) <= 2)
        c_set = tuple(CEntry(v, t.degree(v), 0) for v in t.vertices if v not in on and t.degree(v) >= 3)
        certs.append(BoundCertificate(spine, e2, 0, c_set, _distances(t, spine.vertices), "bridges", policy))
    chosen = _select(certs, policy, t)
    return TheoremBound(chosen.bound, tuple(certs), certs.index(chosen))


def closed_form_reg(g: Graph) -> int | None:
    """Exact regularity of S/J_G for recognised families, else ``None``."""
    cls = classify(g)
    if cls.form == "path":
        return g.n - 1
    if cls.form == "caterpillar":
        return longest_induced_path(g)
    if cls.form == "star_of_cliques":
        return cls.params[0]
    if cls.form == "flower":
        h, k = cls.params
        return 2 * k + h
    return None


@dataclass(frozen=True)
class BaselineBounds:
    lower: int
    upper: int
    clique_bound: int | None


def baseline_bounds(g: Graph) -> BaselineBounds:
    """Induced-path lower bound, ``n - 1`` upper bound and block count for block graphs."""
    lower = longest_induced_path(g)
    cls = classify(g)
    blocks = len(block_decomposition(g).blocks) if cls.is_block_graph else None
    return BaselineBounds(lower, g.n - 1, blocks)
