"""Isomorphism-invariant encodings and enumeration of unlabelled trees."""

from __future__ import annotations

from typing import Iterator

from .blocks import is_tree
from .graph import Graph, GraphError

TREE_ENUM_LIMIT = 12
# cap on leaves visited by the canonical-form search for general graphs
PERMUTATION_BUDGET = 3_628_800  # 10!


def tree_centers(t: Graph) -> list[int]:
    if t.n <= 2:
        return list(t.vertices)
    deg = {v: t.degree(v) for v in t.vertices}
    layer = [v for v in t.vertices if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for leaf in layer:
            for w in t.adj[leaf]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code(t: Graph, root: int) -> tuple[str, list[int]]:
    """AHU code of ``t`` rooted at ``root`` and the vertex order it induces."""
    parent = {root: 0}
    order = [root]
    for u in order:
        for w in sorted(t.adj[u]):
            if w != parent[u]:
                parent[w] = u
                order.append(w)
    code: dict[int, str] = {}
    kids: dict[int, list[int]] = {}
    for u in reversed(order):
        ch = [w for w in t.adj[u] if w != parent[u]]
        ch.sort(key=lambda w: code[w])
        kids[u] = ch
        code[u] = "(" + "".join(code[w] for w in ch) + ")"
    # preorder following the sorted children gives canonical labels
    seq: list[int] = []
    stack = [root]
    while stack:
        u = stack.pop()
        seq.append(u)
        stack.extend(reversed(kids[u]))
    return code[root], seq


def _tree_canonical(t: Graph) -> tuple[str, list[int]]:
    return min(_rooted_code(t, c) for c in tree_centers(t))


def _refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Split an ordered partition until equitable; sub-cells ordered by neighbour counts per cell."""
    cells = [sorted(c) for c in cells]
    while True:
        where = {v: i for i, c in enumerate(cells) for v in c}
        out: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig: dict[int, tuple[int, ...]] = {}
            for v in cell:
                counts = [0] * len(cells)
                for w in g.adj[v]:
                    counts[where[w]] += 1
                sig[v] = tuple(counts)
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                groups.setdefault(sig[v], []).append(v)
            out.extend(groups[k] for k in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def _adjacency_word(g: Graph, order: list[int]) -> str:
    pos = {v: i for i, v in enumerate(order)}
    bits = ["0"] * (g.n * (g.n - 1) // 2)
    for u, v in g.edges:
        i, j = sorted((pos[u], pos[v]))
        bits[j * (j - 1) // 2 + i] = "1"
    return "".join(bits)


def _general_canonical(g: Graph, budget: int) -> tuple[str, list[int]]:
    """Minimum adjacency word over the leaves of an individualisation-refinement search.

    Every leaf is a vertex ordering produced from the degree partition by
    isomorphism-invariant steps, so the minimum is a canonical form. Twins
    (equal open or closed neighbourhoods) are swapped by an automorphism
    fixing everything else, so only one twin per cell is individualised.
    """
    twin_key = {v: (g.adj[v], g.adj[v] | {v}) for v in g.vertices}
    by_degree: dict[int, list[int]] = {}
    for v in g.vertices:
        by_degree.setdefault(g.degree(v), []).append(v)
    root = _refine(g, [by_degree[d] for d in sorted(by_degree)])
    best: tuple[str, list[int]] | None = None
    leaves = 0
    stack = [root]
    while stack:
        cells = stack.pop()
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaves += 1
            if leaves > budget:
                raise GraphError(f"canonical form search exceeded {budget} leaves; graph too symmetric")
            order = [c[0] for c in cells]
            word = _adjacency_word(g, order)
            if best is None or word < best[0]:
                best = (word, order)
            continue
        seen_open: set[frozenset[int]] = set()
        seen_closed: set[frozenset[int]] = set()
        branches = []
        for v in cells[target]:
            open_nb, closed_nb = twin_key[v]
            if open_nb in seen_open or closed_nb in seen_closed:
                continue
            seen_open.add(open_nb)
            seen_closed.add(closed_nb)
            branches.append(v)
        for v in reversed(branches):
            rest = [w for w in cells[target] if w != v]
            stack.append(_refine(g, cells[:target] + [[v], rest] + cells[target + 1:]))
    assert best is not None
    return best


def canonical_order(g: Graph, budget: int = PERMUTATION_BUDGET) -> tuple[str, list[int]]:
    """Canonical string and a vertex sequence realising it (new label i+1 = seq[i])."""
    if g.n == 0:
        return "G0:", []
    if is_tree(g):
        code, seq = _tree_canonical(g)
        return f"T{g.n}:{code}", seq
    word, seq = _general_canonical(g, budget)
    return f"G{g.n}:{word}", seq


def canonical_encode(g: Graph, budget: int = PERMUTATION_BUDGET) -> str:
    return canonical_order(g, budget)[0]


def canonical_relabel(g: Graph, budget: int = PERMUTATION_BUDGET) -> tuple[Graph, dict[int, int]]:
    """Return the canonically labelled copy of ``g`` and the map old -> new."""
    _, seq = canonical_order(g, budget)
    mapping = {v: i + 1 for i, v in enumerate(seq)}
    return g.relabel(mapping), mapping


def enumerate_trees(n: int, limit: int = TREE_ENUM_LIMIT) -> Iterator[Graph]:
    """One canonically labelled tree per isomorphism class, sorted by encoding.

    Grows trees leaf by leaf from the classes on ``n - 1`` vertices and keeps
    the first representative of each canonical code.
    """
    if n < 1:
        raise GraphError("tree order must be >= 1")
    if n > limit:
        raise GraphError(f"tree enumeration limited to n <= {limit}, got {n}")
    level = {canonical_encode(Graph(1, frozenset())): Graph(1, frozenset())}
    for size in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for t in level.values():
            for v in t.vertices:
                grown = Graph.from_edges(size, list(t.edges) + [(v, size)])
                code = canonical_encode(grown)
                if code not in nxt:
                    nxt[code] = grown
        level = nxt
    for code in sorted(level):
        yield canonical_relabel(level[code])[0]

