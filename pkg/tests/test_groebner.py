from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beireg.canon import enumerate_trees
from beireg.graph import Graph, complete_graph, flower, path_graph, star_graph, star_of_cliques
from beireg.groebner import (FieldElement, GroebnerBasis, MonomialIdeal, NonSquarefreeError, Polynomial,
                             admissible_initial_ideal, binomial_edge_initial_ideal, buchberger_reduced_gb,
                             check_char, edge_binomials, initial_ideal, spoly_residuals, x_var, y_var)
from beireg.harness import random_block_graph
from test_graph import graphs

GOLDEN = Path(__file__).parent / "golden"


def mono(n: int, *names: str) -> tuple[int, ...]:
    """Exponent vector from names like 'x1', 'y3'."""
    m = [0] * (2 * n)
    for name in names:
        k = int(name[1:])
        m[x_var(k, n) if name[0] == "x" else y_var(k, n)] += 1
    return tuple(m)


def gb_of(g: Graph, p: int = 32003) -> GroebnerBasis:
    return buchberger_reduced_gb(edge_binomials(g, p), p)


class TestField:
    def test_arithmetic(self):
        a, b = FieldElement(5, 7), FieldElement(4, 7)
        assert (a + b).residue == 2
        assert (a - b).residue == 1
        assert (a * b).residue == 6
        assert (a / b * b).residue == 5
        assert (-a).residue == 2

    @given(st.integers(1, 32002))
    def test_inverse(self, x):
        e = FieldElement(x, 32003)
        assert (e * e.inverse()).residue == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            FieldElement(0, 5).inverse()

    @pytest.mark.parametrize("p", [0, 1, 4, 32004])
    def test_non_prime(self, p):
        with pytest.raises(ValueError):
            check_char(p)


class TestBinomials:
    def test_k2(self):
        (f,) = edge_binomials(complete_graph(2))
        assert f.format() == "1*x1*y2 - 1*x2*y1"

    def test_path(self):
        assert [f.format() for f in edge_binomials(path_graph(3))] == ["1*x1*y2 - 1*x2*y1", "1*x2*y3 - 1*x3*y2"]

    def test_triangle(self):
        assert len(edge_binomials(complete_graph(3))) == 3

    @settings(max_examples=40)
    @given(graphs(7))
    def test_leading_monomial_is_xi_yj(self, g):
        for (i, j), f in zip(g.sorted_edges(), edge_binomials(g)):
            assert f.lead == mono(g.n, f"x{i}", f"y{j}")
            assert dict(f.terms)[f.lead] == 1

    def test_terms_strictly_decreasing(self):
        f = Polynomial.from_dict({mono(2, "y1"): 3, mono(2, "x1"): 1, mono(2, "x2"): 0}, 7)
        assert [m for m, _ in f.terms] == [mono(2, "x1"), mono(2, "y1")]


class TestBuchberger:
    def test_path_123_is_its_own_basis(self):
        gb = gb_of(path_graph(3))
        assert [f.format() for f in gb.elements] == ["1*x1*y2 - 1*x2*y1", "1*x2*y3 - 1*x3*y2"]

    def test_path_123_spoly_by_hand(self):
        # x2*y3*f - x1*y2*g = -x2^2*y1*y3 + x1*x3*y2^2
        f, g = edge_binomials(path_graph(3))
        fd, gd = f.to_dict(), g.to_dict()
        s: dict = {}
        for mult, coeff, poly in ((mono(3, "x2", "y3"), 1, fd), (mono(3, "x1", "y2"), -1, gd)):
            for m, c in poly.items():
                key = tuple(a + b for a, b in zip(m, mult))
                s[key] = (s.get(key, 0) + coeff * c) % 32003
        s = {m: c for m, c in s.items() if c}
        assert s == {mono(3, "x2", "x2", "y1", "y3"): 32002, mono(3, "x1", "x3", "y2", "y2"): 1}
        assert spoly_residuals(gb_of(path_graph(3))) == []

    @pytest.mark.parametrize("name, g", [
        ("path_2_1_3", Graph.from_edges(3, [(1, 2), (1, 3)])),
        ("claw", star_graph(3)),
        ("diamond", Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])),
    ])
    def test_golden_dump(self, name, g):
        assert gb_of(g).dump() == (GOLDEN / f"gb_{name}.txt").read_text()

    def test_claw_cubics(self):
        gb = gb_of(star_graph(3))
        cubics = [f for f in gb.elements if sum(f.lead) == 3]
        assert len(gb.elements) == 6 and len(cubics) == 3
        for f in cubics:
            # y1 * (x_i y_j - x_j y_i)
            assert all(m[y_var(1, 4)] == 1 for m, _ in f.terms)

    def test_char_mismatch(self):
        with pytest.raises(ValueError):
            buchberger_reduced_gb(edge_binomials(path_graph(3), 32003), 2)

    def test_empty_generators(self):
        with pytest.raises(ValueError):
            buchberger_reduced_gb([], 32003)

    @settings(max_examples=30, deadline=None)
    @given(graphs(6), st.randoms(use_true_random=False))
    def test_unique_under_shuffled_generators(self, g, rng):
        if not g.edges:
            return
        gens = edge_binomials(g)
        shuffled = gens[:]
        rng.shuffle(shuffled)
        # scaling a generator must not change the reduced basis either
        scaled = [Polynomial(tuple((m, c * 5 % 32003) for m, c in f.terms), 32003) for f in shuffled]
        assert buchberger_reduced_gb(scaled) == buchberger_reduced_gb(gens)

    @settings(max_examples=30, deadline=None)
    @given(graphs(6))
    def test_reduced_and_complete(self, g):
        if not g.edges:
            return
        gb = gb_of(g)
        assert spoly_residuals(gb) == []
        leads = gb.leads
        for i, f in enumerate(gb.elements):
            assert f.terms[0][1] == 1
            for j, h in enumerate(gb.elements):
                if i != j:
                    assert not any(all(a <= b for a, b in zip(leads[i], m)) for m, _ in h.terms)
        assert leads == sorted(leads, reverse=True)


class TestInitialIdeal:
    def test_k2(self):
        ideal = initial_ideal(gb_of(complete_graph(2)))
        assert ideal.format() == ["x1*y2"] and ideal.squarefree

    def test_path_213(self):
        ideal = initial_ideal(gb_of(Graph.from_edges(3, [(1, 2), (1, 3)])))
        assert sorted(ideal.format()) == ["x1*y2", "x1*y3", "x2*y1*y3"]

    def test_non_squarefree_refused(self):
        square = Polynomial(((mono(1, "x1", "x1"), 1),), 5)
        with pytest.raises(NonSquarefreeError, match=r"x1\^2"):
            initial_ideal(GroebnerBasis((square,), 5))

    def test_minimalize(self):
        ideal = MonomialIdeal.from_monomials([mono(2, "x1"), mono(2, "x1", "y2"), mono(2, "y1")], 4)
        assert sorted(ideal.format()) == ["x1", "y1"]


class TestAdmissible:
    def test_k2(self):
        assert admissible_initial_ideal(complete_graph(2)).format() == ["x1*y2"]

    def test_path_213(self):
        assert sorted(admissible_initial_ideal(Graph.from_edges(3, [(1, 2), (1, 3)])).format()) == \
            ["x1*y2", "x1*y3", "x2*y1*y3"]

    def test_path_123(self):
        assert sorted(admissible_initial_ideal(path_graph(3)).format()) == ["x1*y2", "x2*y3"]

    def test_needs_tree(self):
        with pytest.raises(ValueError):
            admissible_initial_ideal(complete_graph(3))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_matches_buchberger_on_relabelled_trees(self, n):
        rng = random.Random(n)
        for t in enumerate_trees(n):
            perm = list(t.vertices)
            rng.shuffle(perm)
            t = t.relabel({v: perm[v - 1] for v in t.vertices})
            assert binomial_edge_initial_ideal(t, route="buchberger") == admissible_initial_ideal(t)


SUITE = [flower(1, 1), flower(2, 1), flower(1, 2), star_of_cliques([3, 3]), star_of_cliques([3, 3, 3])] + \
    [random_block_graph(random.Random(s), 8) for s in range(6)] + list(enumerate_trees(6))


@pytest.mark.parametrize("g", SUITE, ids=lambda g: f"n{g.n}m{g.m}")
def test_initial_ideal_independent_of_characteristic(g):
    ideals = {p: binomial_edge_initial_ideal(g, p) for p in (2, 3, 32003)}
    assert ideals[2] == ideals[3] == ideals[32003]
    assert ideals[2].squarefree
