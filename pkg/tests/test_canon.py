from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beireg.canon import canonical_encode, canonical_relabel, enumerate_trees
from beireg.graph import Graph, GraphError, flower, path_graph, star_graph
from beireg.harness import block_corpus, paper_example
from oracles import prufer_tree_classes, to_nx, tree_invariant
from test_graph import graphs


def shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(g.vertices)
    rng.shuffle(perm)
    return g.relabel({v: perm[v - 1] for v in g.vertices})


def test_isomorphic_paths_agree():
    a = Graph.from_edges(3, [(1, 2), (2, 3)])
    b = Graph.from_edges(3, [(2, 1), (1, 3)])
    assert canonical_encode(a) == canonical_encode(b)


def test_star_differs_from_path():
    assert canonical_encode(star_graph(3)) != canonical_encode(path_graph(4))


@pytest.mark.parametrize("g", [paper_example(), flower(1, 2), path_graph(7)] + block_corpus(9, 3, 4),
                         ids=lambda g: f"n{g.n}m{g.m}")
def test_invariant_under_relabeling(g):
    rng = random.Random(g.n * 1000 + g.m)
    code = canonical_encode(g)
    for _ in range(100):
        assert canonical_encode(shuffled(g, rng)) == code


def test_canonical_relabel_is_isomorphic():
    g = flower(2, 1)
    h, mapping = canonical_relabel(g)
    assert sorted(mapping.values()) == list(g.vertices)
    assert h == g.relabel(mapping)
    assert canonical_relabel(shuffled(g, random.Random(1)))[0] == h


@pytest.mark.parametrize("n, count", [(4, 2), (7, 11), (8, 23)])
def test_enumeration_counts_match_prufer(n, count):
    trees = list(enumerate_trees(n))
    oracle = prufer_tree_classes(n)
    assert len(trees) == len(oracle) == count
    invariants = {tree_invariant(n, [(a - 1, b - 1) for a, b in t.edges]) for t in trees}
    assert invariants == set(oracle)


def test_enumeration_small_counts():
    assert [sum(1 for _ in enumerate_trees(n)) for n in range(1, 7)] == [1, 1, 1, 2, 3, 6]


def test_enumeration_is_deterministic_and_canonical():
    first = list(enumerate_trees(6))
    assert first == list(enumerate_trees(6))
    assert all(canonical_relabel(t)[0] == t for t in first)


def test_enumeration_limit():
    with pytest.raises(GraphError):
        next(enumerate_trees(13))


@settings(max_examples=150, deadline=None)
@given(graphs(7), graphs(7))
def test_codes_equal_iff_isomorphic(a, b):
    same = canonical_encode(a) == canonical_encode(b)
    assert same == (a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b)))


@settings(max_examples=60, deadline=None)
@given(graphs(9), st.randoms(use_true_random=False))
def test_general_graph_relabel_invariance(g, rng):
    assert canonical_encode(shuffled(g, rng)) == canonical_encode(g)
