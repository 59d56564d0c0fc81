"""Regularity bounds for binomial edge ideals of block graphs, with an exact oracle.

The combinatorial side lives in :mod:`beireg.graph`, :mod:`beireg.blocks` and
:mod:`beireg.bounds`; the algebraic oracle in :mod:`beireg.groebner` and
:mod:`beireg.betti`; campaigns and reports in :mod:`beireg.harness`.
"""

from __future__ import annotations

from .betti import BettiTable, Budget, BudgetExceeded, betti_table, oracle, reduced_homology_ranks, regularity_oracle
from .blocks import BlockDecomposition, DisconnectedGraphError, GraphClass, block_decomposition, classify, longest_induced_path
from .bounds import (BaselineBounds, BoundCertificate, HypothesisError, Spine, TheoremBound, baseline_bounds,
                     bound_certificate, closed_form_reg, find_spines, theorem_bound, tree_bound)
from .canon import canonical_encode, canonical_relabel, enumerate_trees
from .graph import (Graph, GraphError, GraphParseError, OhtaniTriple, caterpillar, complete_graph, flower, glue,
                    ohtani_triple, parse_graph, path_graph, star_graph, star_of_cliques)
from .groebner import (GroebnerBasis, MonomialIdeal, NonSquarefreeError, Polynomial, admissible_initial_ideal,
                       buchberger_reduced_gb, edge_binomials, initial_ideal)
from .harness import VerificationRecord, VerifyOptions, emit_report, paper_example, run_verification

__version__ = "0.1.0"

__all__ = [
    "BaselineBounds", "BettiTable", "BlockDecomposition", "BoundCertificate", "Budget", "BudgetExceeded",
    "DisconnectedGraphError", "Graph", "GraphClass", "GraphError", "GraphParseError", "GroebnerBasis",
    "HypothesisError", "MonomialIdeal", "NonSquarefreeError", "OhtaniTriple", "Polynomial", "Spine",
    "TheoremBound", "VerificationRecord", "VerifyOptions", "admissible_initial_ideal", "baseline_bounds",
    "betti_table", "block_decomposition", "bound_certificate", "buchberger_reduced_gb", "canonical_encode",
    "canonical_relabel", "caterpillar", "classify", "closed_form_reg", "complete_graph", "edge_binomials",
    "emit_report", "enumerate_trees", "find_spines", "flower", "glue", "initial_ideal", "longest_induced_path",
    "ohtani_triple", "oracle", "paper_example", "parse_graph", "path_graph", "reduced_homology_ranks",
    "regularity_oracle", "run_verification", "star_graph", "star_of_cliques", "theorem_bound", "tree_bound",
]
