from __future__ import annotations

import csv
import io
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beireg.betti import Budget
from beireg.blocks import block_decomposition, classify
from beireg.graph import complete_graph, path_graph
from beireg.harness import (CSV_COLUMNS, VerifyOptions, block_corpus, emit_report, fixture_corpus, random_block_graph,
                            record_key, render_csv, render_json, run_verification, star_corpus, summarize, tree_corpus,
                            verify_graph)

GOLDEN = Path(__file__).parent / "golden"
BOUNDS_ONLY = VerifyOptions(policies=("max", "min"), variants=("bridges", "literal"), oracle=False)


def test_k2_record():
    (row,) = csv.DictReader(io.StringIO(render_csv([verify_graph(complete_graph(2))])))
    assert (row["bound_max"], row["reg"], row["tight"]) == ("1", "1", "true")


def test_csv_columns():
    header = render_csv([]).strip()
    assert header == "key,n,m,class,ell_induced,spine_len,e2,b,csum,bound_max,bound_min,n_minus_1,reg,tight,violations"
    assert tuple(header.split(",")) == CSV_COLUMNS


def test_trees_max5_golden():
    options = VerifyOptions(policies=("max", "min"), variants=("bridges", "literal"))
    records = run_verification(tree_corpus(5), options)
    assert len(records) == 7
    assert render_csv(records) == (GOLDEN / "trees_max5.csv").read_text()


def test_tree_keys_unique_up_to_8():
    records = run_verification(tree_corpus(8), BOUNDS_ONLY)
    keys = [r.key for r in records]
    assert len(keys) == 47 == len(set(keys))
    assert keys == sorted(keys)


def test_reruns_are_byte_identical(tmp_path):
    def campaign(tag: str) -> tuple[str, str]:
        recs = run_verification(block_corpus(10, 7, 8), BOUNDS_ONLY)
        a = emit_report(recs, "csv", tmp_path / f"{tag}.csv").read_text()
        b = emit_report(recs, "json", tmp_path / f"{tag}.json", {"seed": 7}).read_text()
        return a, b

    assert campaign("one") == campaign("two")


def test_parallel_matches_serial():
    graphs = block_corpus(7, 3, 4) + star_corpus()
    opts = VerifyOptions(betti_method="lcm")
    assert render_csv(run_verification(graphs, opts, jobs=2)) == render_csv(run_verification(graphs, opts))


def test_fixture_record():
    (rec,) = run_verification(fixture_corpus(), VerifyOptions(policies=("max", "min", "canonical"), oracle=False))
    assert (rec.n, rec.m) == (17, 19)
    assert (rec.bound_max, rec.bound_min) == (11, 9)
    assert rec.bounds["canonical/bridges"] in {c.bound for c in rec.certificates}
    doc = json.loads(render_json([rec]))["records"][0]
    assert len(doc["certificates"]) == 25
    horizontal = next(c for c in doc["certificates"] if c["spine"] == [1, 2, 3, 4, 5])
    assert (horizontal["e2"], horizontal["ell"], horizontal["b"], horizontal["bound"]) == (1, 4, 0, 9)


def test_budget_exceeded_is_flagged_not_dropped():
    opts = VerifyOptions(budget=Budget(hochster_max_n=3))
    records = run_verification([path_graph(3), path_graph(5)], opts)
    assert len(records) == 2
    skipped = [r for r in records if r.skipped]
    assert len(skipped) == 1 and skipped[0].n == 5 and skipped[0].reg is None
    assert summarize(records)["skipped"] == 1


def test_unwritable_report(tmp_path):
    with pytest.raises(OSError):
        emit_report([], "csv", tmp_path / "missing" / "out.csv")
    with pytest.raises(ValueError):
        emit_report([], "xml", tmp_path / "out.xml")


def test_block_corpus_deterministic_and_distinct():
    a = block_corpus(10, 42, 15)
    assert a == block_corpus(10, 42, 15)
    assert len({record_key(g) for g in a}) == len(a) == 15


@settings(max_examples=100)
@given(st.integers(0, 10**9), st.integers(2, 16))
def test_random_block_graphs_satisfy_hypothesis(seed, max_n):
    g = random_block_graph(random.Random(seed), max_n)
    assert g.n <= max_n
    c = classify(g)
    assert c.is_connected and c.is_block_graph and c.large_blocks_all_end_blocks
    assert all(len(b) <= 4 for b in block_decomposition(g).blocks)
