"""Simple undirected graphs on vertex labels 1..n, plus I/O and constructions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    """Invalid graph data or an operation applied outside its domain."""


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple graph on ``1..n``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.  ``names`` is an
    optional display label per vertex and takes no part in equality.
    """

    n: int
    edges: frozenset[tuple[int, int]]
    names: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (1 <= u < v <= self.n):
                raise GraphError(f"edge ({u}, {v}) not normalized or outside 1..{self.n}")
        if self.names is not None and len(self.names) != self.n:
            raise GraphError("names must have one entry per vertex")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], names: Sequence[str] | None = None) -> Graph:
        normalized: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = _edge(u, v)
            if e in normalized:
                raise GraphError(f"duplicate edge {e}")
            normalized.add(e)
        return cls(n, frozenset(normalized), tuple(names) if names is not None else None)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nbrs: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def name(self, v: int) -> str:
        return self.names[v - 1] if self.names else str(v)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = [], [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])

    def relabel(self, mapping: dict[int, int]) -> Graph:
        """Apply a bijection ``old -> new`` of ``1..n``."""
        names = None
        if self.names is not None:
            inv = {new: old for old, new in mapping.items()}
            names = tuple(self.name(inv[i]) for i in self.vertices)
        return Graph.from_edges(self.n, ((mapping[u], mapping[v]) for u, v in self.edges), names)

    def induced(self, keep: Iterable[int]) -> Graph:
        """Induced subgraph on ``keep``; vertices renumbered by ascending old label.

        Use :meth:`induced_map` for the old-label order of the result.
        """
        order = sorted(set(keep))
        pos = {v: i + 1 for i, v in enumerate(order)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        names = tuple(self.name(v) for v in order) if self.names else None
        return Graph.from_edges(len(order), edges, names)

    def delete_vertex(self, v: int) -> Graph:
        return self.induced(w for w in self.vertices if w != v)

    def add_edges(self, new_edges: Iterable[tuple[int, int]]) -> Graph:
        es = set(self.edges)
        es.update(_edge(u, v) for u, v in new_edges if u != v)
        return Graph(self.n, frozenset(es), self.names)

    def disjoint_union(self, other: Graph) -> Graph:
        shift = self.n
        edges = list(self.edges) + [(u + shift, v + shift) for u, v in other.edges]
        names = None
        if self.names or other.names:
            names = tuple(self.name(v) for v in self.vertices) + tuple(other.name(v) for v in other.vertices)
        return Graph.from_edges(self.n + other.n, edges, names)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


# -- standard families -------------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with center 1."""
    return Graph.from_edges(leaves + 1, ((1, j) for j in range(2, leaves + 2)))


def caterpillar(legs: Sequence[int]) -> Graph:
    """Spine ``1..len(legs)`` with ``legs[i]`` pendant leaves on spine vertex ``i+1``."""
    s = len(legs)
    edges = [(i, i + 1) for i in range(1, s)]
    nxt = s + 1
    for i, count in enumerate(legs, start=1):
        for _ in range(count):
            edges.append((i, nxt))
            nxt += 1
    return Graph.from_edges(nxt - 1, edges)


def spider(legs: Sequence[int]) -> Graph:
    """Center 1 with one pendant path per entry of ``legs`` (entry = path length)."""
    edges = []
    nxt = 2
    for length in legs:
        prev = 1
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt - 1, edges)


# -- gluing ------------------------------------------------------------------

def glue(parts: Sequence[tuple[Graph, int]]) -> Graph:
    """Identify one designated vertex from each part into a single vertex.

    The shared vertex becomes 1; the remaining vertices follow part by part,
    each part's vertices in ascending original order.
    """
    if not parts:
        raise GraphError("glue needs at least one part")
    edges: list[tuple[int, int]] = []
    nxt = 2
    for g, v in parts:
        if v not in g.vertices:
            raise GraphError(f"glue vertex {v} not in part with n={g.n}")
        local = {v: 1}
        for w in g.vertices:
            if w != v:
                local[w] = nxt
                nxt += 1
        edges.extend((local[a], local[b]) for a, b in g.edges)
    return Graph.from_edges(nxt - 1, edges)


def star_of_cliques(sizes: Sequence[int]) -> Graph:
    """Cliques of the given sizes sharing vertex 1."""
    return glue([(complete_graph(s), 1) for s in sizes])


def flower(h: int, k: int) -> Graph:
    """F_{h,k}(v): h triangles and k copies of K_{1,3} glued at a free vertex each; v = 1."""
    if h < 0 or k < 1:
        raise GraphError("flower needs h >= 0 and k >= 1")
    return glue([(complete_graph(3), 1)] * h + [(star_graph(3), 2)] * k)


# -- Ohtani triple -----------------------------------------------------------

def is_free_vertex(g: Graph, v: int) -> bool:
    """A vertex is free when it lies in exactly one maximal clique, i.e. N(v) is a clique."""
    return g.is_clique(g.adj[v])


@dataclass(frozen=True)
class OhtaniTriple:
    """Graphs of the short exact sequence at a non-free pivot.

    ``g_double_prime`` and ``h`` live on ``1..n-1``; ``kept[i]`` is the source
    label of their vertex ``i + 1``.
    """

    pivot: int
    g_prime: Graph
    g_double_prime: Graph
    h: Graph
    kept: tuple[int, ...]


def ohtani_triple(g: Graph, v: int) -> OhtaniTriple:
    if v not in g.vertices:
        raise GraphError(f"vertex {v} not in graph")
    if is_free_vertex(g, v):
        clique = sorted(g.adj[v] | {v})
        raise GraphError(f"vertex {v} is free; its only maximal clique is {clique}")
    nbrs = sorted(g.adj[v])
    g_prime = g.add_edges((a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:])
    kept = tuple(w for w in g.vertices if w != v)
    return OhtaniTriple(v, g_prime, g.delete_vertex(v), g_prime.delete_vertex(v), kept)


# -- text formats ------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    header: tuple[int, int] | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    header_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 1 or b < 0:
                raise GraphParseError(f"bad header 'n m' = {a} {b}", lineno)
            header, header_line = (a, b), lineno
            continue
        n = header[0]
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphParseError(f"label out of range 1..{n} in {line!r}", lineno)
        if a == b:
            raise GraphParseError(f"self-loop at {a}", lineno)
        e = _edge(a, b)
        if e in seen:
            raise GraphParseError(f"duplicate edge {a} {b}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphParseError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphParseError(f"header declares {header[1]} edges, found {len(edges)}", header_line)
    return Graph.from_edges(header[0], edges)


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    try:
        nxg = nx.from_graph6_bytes(data.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError, UnicodeEncodeError) as exc:
        raise GraphParseError(f"invalid graph6 string: {exc}", 1) from None
    n = nxg.number_of_nodes()
    return Graph.from_edges(n, ((u + 1, v + 1) for u, v in nxg.edges()))


def parse_graph(text: str, fmt: str = "edgelist") -> Graph:
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise GraphParseError(f"unknown format {fmt!r}")


def to_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def to_graph6(g: Graph) -> str:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from((u - 1, v - 1) for u, v in g.edges)
    return nx.to_graph6_bytes(nxg, header=False).decode("ascii").strip()


def to_dot(g: Graph, highlight: Iterable[int] = ()) -> str:
    marked = set(highlight)
    lines = ["graph G {"]
    for v in g.vertices:
        attrs = [f'label="{g.name(v)}"']
        if v in marked:
            attrs.append("style=filled")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    lines.extend(f"  {u} -- {v};" for u, v in g.sorted_edges())
    lines.append("}")
    return "\n".join(lines) + "\n"
