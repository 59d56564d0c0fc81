from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beireg.graph import (Graph, GraphError, GraphParseError, caterpillar, complete_graph, flower, glue,
                          is_free_vertex, ohtani_triple, parse_graph, path_graph, spider, star_graph,
                          star_of_cliques, to_dot, to_edge_list, to_graph6)
from beireg.harness import paper_example, paper_vertex


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < p])


@st.composite
def graphs(draw, max_n: int = 9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


class TestParse:
    def test_k2(self):
        g = parse_graph("2 1\n1 2")
        assert (g.n, g.sorted_edges()) == (2, [(1, 2)])

    def test_path(self):
        assert parse_graph("3 2\n1 2\n2 3").sorted_edges() == [(1, 2), (2, 3)]

    def test_comments_and_blank_lines(self):
        g = parse_graph("# header\n\n3 2  # n m\n2 1\n# mid\n3 2\n")
        assert g.sorted_edges() == [(1, 2), (2, 3)]

    def test_fixture_file(self, fixture_path):
        g = parse_graph(fixture_path.read_text())
        assert (g.n, g.m) == (17, 19)
        assert g.edges == paper_example().edges

    @pytest.mark.parametrize("text, line", [
        ("3 2\n1 2\n2 x\n", 3),
        ("3 2\n1 2\n2 4\n", 3),
        ("3 2\n1 2\n2 1\n", 3),
        ("3 2\n1 1\n2 3\n", 2),
        ("3 2\n1 2 3\n", 2),
        ("3 3\n1 2\n2 3\n", 1),
    ])
    def test_errors_name_the_line(self, text, line):
        with pytest.raises(GraphParseError) as info:
            parse_graph(text)
        assert info.value.line == line
        assert f"line {line}" in str(info.value)

    def test_missing_header(self):
        with pytest.raises(GraphParseError):
            parse_graph("# nothing\n")

    def test_graph6_roundtrip(self):
        g = paper_example()
        assert parse_graph(to_graph6(g), "graph6").edges == g.edges

    def test_graph6_known(self):
        # "Bw" is the triangle in graph6
        assert parse_graph("Bw", "graph6").edges == complete_graph(3).edges

    def test_bad_graph6(self):
        with pytest.raises(GraphParseError):
            parse_graph("~~~~", "graph6")

    @given(graphs())
    def test_edge_list_roundtrip(self, g):
        assert parse_graph(to_edge_list(g, "roundtrip")) == g


class TestGraph:
    def test_invalid_edges(self):
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(1, 1)])
        with pytest.raises(GraphError):
            Graph.from_edges(3, [(1, 4)])

    @given(graphs())
    def test_adjacency_matches_edges(self, g):
        from_adj = {(min(u, v), max(u, v)) for u in g.vertices for v in g.adj[u]}
        assert from_adj == set(g.edges)
        assert sum(g.degree(v) for v in g.vertices) == 2 * g.m

    def test_induced_renumbers(self):
        g = path_graph(5).induced([2, 3, 5])
        assert (g.n, g.sorted_edges()) == (3, [(1, 2)])

    def test_dot_highlight(self):
        dot = to_dot(path_graph(3), [1, 2])
        assert "graph" in dot and "1 -- 2" in dot


class TestConstructions:
    def test_glue_two_edges_is_path(self):
        g = glue([(path_graph(2), 1), (path_graph(2), 1)])
        assert g.sorted_edges() == [(1, 2), (1, 3)]

    def test_glue_three_triangles(self):
        g = glue([(complete_graph(3), 2)] * 3)
        assert (g.n, g.m) == (7, 9)
        assert g == star_of_cliques([3, 3, 3])

    def test_glue_triangle_and_claw(self):
        g = glue([(complete_graph(3), 3), (star_graph(3), 2)])
        assert (g.n, g.m) == (6, 6)
        assert g == flower(1, 1)

    def test_glue_empty(self):
        with pytest.raises(GraphError):
            glue([])

    def test_flower_size(self):
        for h in range(3):
            for k in range(1, 3):
                assert flower(h, k).n == 1 + 2 * h + 3 * k

    def test_caterpillar_and_spider(self):
        assert caterpillar([0, 2, 1]).n == 6
        assert spider([2, 2, 2]).n == 7


class TestOhtani:
    def test_path_center(self):
        t = ohtani_triple(path_graph(3), 2)
        assert t.g_prime == complete_graph(3)
        assert (t.g_double_prime.n, t.g_double_prime.m) == (2, 0)
        assert t.h == complete_graph(2)

    def test_claw_center(self):
        t = ohtani_triple(star_graph(3), 1)
        assert t.g_prime == complete_graph(4)
        assert (t.g_double_prime.n, t.g_double_prime.m) == (3, 0)
        assert t.h == complete_graph(3)

    def test_worked_example_at_r(self):
        g = paper_example()
        r = paper_vertex("r")
        t = ohtani_triple(g, r)
        nbrs = {paper_vertex(x) for x in ("a3", "r1", "r2", "r3", "r4")}
        assert g.adj[r] == nbrs
        assert t.g_prime.is_clique(nbrs | {r})
        added = t.g_prime.edges - g.edges
        assert added == {(a, b) for a in nbrs for b in nbrs if a < b} - g.edges

    def test_free_vertex_rejected_naming_clique(self):
        with pytest.raises(GraphError, match=r"\[1, 2, 3\]"):
            ohtani_triple(complete_graph(3), 1)

    @settings(max_examples=60)
    @given(graphs(8), st.data())
    def test_triple_invariants(self, g, data):
        candidates = [v for v in g.vertices if not is_free_vertex(g, v)]
        if not candidates:
            return
        v = data.draw(st.sampled_from(candidates))
        t = ohtani_triple(g, v)
        assert t.g_double_prime.n == g.n - 1
        # h is literally the induced subgraph of g_prime on the kept vertices
        relabel = {old: i + 1 for i, old in enumerate(t.kept)}
        induced = {(relabel[a], relabel[b]) for a, b in t.g_prime.edges if a != v and b != v}
        assert induced == set(t.h.edges)
        assert g.edges <= t.g_prime.edges
