"""Block structure of graphs and the graph classes built on it."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, GraphError, is_free_vertex


class DisconnectedGraphError(GraphError):
    def __init__(self, components: list[list[int]]):
        self.components = components
        super().__init__(f"graph is disconnected; components: {components}")


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    bridges: frozenset[tuple[int, int]]
    bd: dict[int, int]
    lbd: dict[int, int]
    # block index -> cut vertices in that block
    block_cut_tree: dict[int, frozenset[int]]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def large_blocks(self) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if len(b) >= 3]

    def is_end_block(self, i: int) -> bool:
        return len(self.block_cut_tree[i]) <= 1


def _biconnected_edge_sets(g: Graph) -> list[set[tuple[int, int]]]:
    # Iterative Hopcroft-Tarjan with an edge stack.
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    comps: list[set[tuple[int, int]]] = []
    counter = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, 0, iter(sorted(g.adj[root])))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    comp: set[tuple[int, int]] = set()
                    while True:
                        a, b = edge_stack.pop()
                        comp.add((min(a, b), max(a, b)))
                        if (a, b) == (p, u):
                            break
                    comps.append(comp)
    return comps


def block_decomposition(g: Graph) -> BlockDecomposition:
    if not g.is_connected():
        raise DisconnectedGraphError(g.components())
    if g.n == 1:
        blocks = [frozenset({1})]
    else:
        blocks = [frozenset(v for e in es for v in e) for es in _biconnected_edge_sets(g)]
    blocks.sort(key=lambda b: (sorted(b), len(b)))
    bd = {v: 0 for v in g.vertices}
    lbd = {v: 0 for v in g.vertices}
    for b in blocks:
        for v in b:
            bd[v] += 1
            if len(b) >= 3:
                lbd[v] += 1
    cuts = frozenset(v for v in g.vertices if bd[v] >= 2)
    bridges = frozenset(tuple(sorted(b)) for b in blocks if len(b) == 2)
    bct = {i: frozenset(b & cuts) for i, b in enumerate(blocks)}
    return BlockDecomposition(tuple(blocks), cuts, bridges, bd, lbd, bct)


# -- classes -----------------------------------------------------------------

@dataclass(frozen=True)
class GraphClass:
    is_connected: bool
    is_tree: bool
    is_block_graph: bool
    large_blocks_all_end_blocks: bool
    form: str = "none"  # path | caterpillar | star_of_cliques | flower | none
    params: tuple[int, ...] = ()

    def summary(self) -> str:
        if self.form != "none":
            if self.params:
                return f"{self.form}({','.join(map(str, self.params))})"
            return self.form
        if self.is_tree:
            return "tree"
        if self.is_block_graph:
            return "block"
        return "graph"


def is_tree(g: Graph) -> bool:
    return g.is_connected() and g.m == g.n - 1


def is_caterpillar(g: Graph) -> bool:
    """A tree whose non-leaf vertices induce a path (or nothing)."""
    if not is_tree(g):
        return False
    inner = [v for v in g.vertices if g.degree(v) >= 2]
    if not inner:
        return True
    core = g.induced(inner)
    return core.is_connected() and all(core.degree(v) <= 2 for v in core.vertices)


def _star_of_cliques_k(g: Graph, dec: BlockDecomposition) -> int | None:
    if len(dec.blocks) < 2 or any(len(b) < 3 for b in dec.blocks):
        return None
    common = frozenset.intersection(*dec.blocks)
    return len(dec.blocks) if len(common) == 1 else None


def _flower_params(g: Graph, dec: BlockDecomposition) -> tuple[int, int] | None:
    for v in g.vertices:
        h = k = 0
        ok = True
        for i in dec.blocks_at(v):
            b = dec.blocks[i]
            others = sorted(b - {v})
            if len(b) == 3 and all(dec.bd[w] == 1 for w in others):
                h += 1
            elif len(b) == 2:
                c = others[0]
                arms = [w for w in g.adj[c] if w != v]
                if dec.bd[c] == 3 and len(arms) == 2 and all(g.degree(w) == 1 for w in arms):
                    k += 1
                else:
                    ok = False
                    break
            else:
                ok = False
                break
        if ok and k >= 1 and g.n == 1 + 2 * h + 3 * k:
            return h, k
    return None


def classify(g: Graph) -> GraphClass:
    conn = g.is_connected()
    if not conn:
        return GraphClass(False, False, False, False)
    dec = block_decomposition(g)
    block = all(g.is_clique(b) for b in dec.blocks)
    ends = all(dec.is_end_block(i) for i in dec.large_blocks())
    tree = g.m == g.n - 1
    form, params = "none", ()
    if tree and all(g.degree(v) <= 2 for v in g.vertices):
        form = "path"
    elif tree and is_caterpillar(g):
        form = "caterpillar"
    elif block and (k := _star_of_cliques_k(g, dec)) is not None:
        form, params = "star_of_cliques", (k,)
    elif block and (hk := _flower_params(g, dec)) is not None:
        form, params = "flower", hk
    return GraphClass(True, tree, block, ends, form, params)


# -- induced paths -----------------------------------------------------------

INDUCED_PATH_LIMIT = 20


def longest_induced_path(g: Graph, limit: int = INDUCED_PATH_LIMIT) -> int:
    """Largest edge count of an induced path, by exhaustive extension."""
    if g.n > limit:
        raise GraphError(f"longest_induced_path limited to n <= {limit}, got {g.n}")
    adj = g.adj
    best = 0

    def extend(path: list[int], blocked: set[int]) -> None:
        # blocked: path vertices and neighbours of all but the last one
        nonlocal best
        best = max(best, len(path) - 1)
        last = path[-1]
        for w in adj[last]:
            if w in blocked or w in path:
                continue
            path.append(w)
            extend(path, blocked | adj[last] | {last})
            path.pop()

    for s in g.vertices:
        extend([s], set())
    return best


def free_vertices(g: Graph) -> list[int]:
    return [v for v in g.vertices if is_free_vertex(g, v)]
