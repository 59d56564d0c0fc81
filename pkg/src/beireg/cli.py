"""Command-line interface: ``beireg analyze|reg|verify|gen``.

Exit codes: 0 success, 1 a bound violation was found, 2 usage, parse or
computation error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, replace
from pathlib import Path
from typing import Sequence

from .betti import Budget, BudgetExceeded, oracle
from .blocks import classify, is_tree
from .bounds import HypothesisError, baseline_bounds, closed_form_reg, theorem_bound, tree_bound
from .graph import (Graph, GraphError, GraphParseError, caterpillar, flower, parse_graph, path_graph,
                    star_of_cliques, to_dot, to_edge_list, to_graph6)
from .groebner import NonSquarefreeError, buchberger_reduced_gb, check_char, edge_binomials
from .harness import (BlockGraphConfig, VerifyOptions, block_corpus, emit_report, fixture_corpus, flower_corpus,
                      random_block_graph, render_csv, render_json, run_verification, star_corpus, summarize,
                      tree_corpus)

POLICY_NAMES = {"max": "max", "min": "min", "canonical": "canonical"}

# budget used for the 17-vertex fixture under --long
LONG_BUDGET = {"hochster_max_n": 17, "lcm_max_n": 17, "max_ground": 34, "max_lattice": 5_000_000}


def _read_graph(args: argparse.Namespace) -> Graph:
    source = args.input or args.path
    if source in (None, "-"):
        text = sys.stdin.read()
    else:
        text = Path(source).read_text()
    return parse_graph(text, args.format)


def _add_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="graph file ('-' or omitted: stdin)")
    p.add_argument("--input", help="graph file (alternative to the positional path)")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")


def _add_algebra(p: argparse.ArgumentParser) -> None:
    p.add_argument("--char", type=int, default=32003, help="prime field characteristic")
    p.add_argument("--gb", choices=("buchberger", "paths"), default="buchberger")
    p.add_argument("--betti", choices=("hochster", "lcm"), default="hochster")


def _analyze(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    cls = classify(g)
    out: dict = {
        "n": g.n,
        "m": g.m,
        "class": asdict(cls) | {"summary": cls.summary()},
        "policy": args.policy,
        "e2Variant": args.e2,
        "closedForm": closed_form_reg(g) if cls.is_connected else None,
    }
    if cls.is_connected:
        base = baseline_bounds(g)
        out["baseline"] = {"lower": base.lower, "upper": base.upper, "cliqueBound": base.clique_bound}
    try:
        tb = theorem_bound(g, args.e2, args.policy)
    except (HypothesisError, GraphError) as exc:
        out.update(applicable=False, reason=str(exc), bound=None, certificates=[])
    else:
        out.update(applicable=True, bound=tb.value, selected=tb.selected,
                   certificates=[c.to_dict() | {"distToSpine": {str(k): v for k, v in sorted(c.dist_to_spine.items())}}
                                 for c in tb.certificates])
    if is_tree(g) and g.n >= 2:
        out["treeBound"] = tree_bound(g, args.policy).value
    print(json.dumps(out, indent=2, sort_keys=True))
    if args.dot:
        sel = out.get("selected")
        spine = out["certificates"][sel]["spine"] if out.get("certificates") and sel is not None else []
        Path(args.dot).write_text(to_dot(g, spine))
    return 0


def _reg(args: argparse.Namespace) -> int:
    g = _read_graph(args)
    check_char(args.char)
    if args.dump_gb:
        if g.edges:
            sys.stdout.write(buchberger_reduced_gb(edge_binomials(g, args.char), args.char).dump())
        return 0
    res = oracle(g, args.char, args.gb, args.betti, Budget.from_env())
    doc = {"betti": res.table.to_list(), "reg": res.reg, "pd": res.table.projective_dimension,
           "char": args.char, "method": args.betti, "route": args.gb}
    if not args.json:
        print(res.table.format())
    print(json.dumps(doc, sort_keys=True))
    return 0


def _verify(args: argparse.Namespace) -> int:
    budget = Budget.from_env()
    graphs: list[Graph] = []
    corpora = []
    if args.trees:
        graphs += tree_corpus(args.max_n)
        corpora.append(f"trees<= {args.max_n}")
    if args.blocks:
        graphs += block_corpus(args.max_n, args.seed, args.count)
        corpora.append(f"blocks<= {args.max_n} x{args.count}")
    if args.flowers:
        graphs += flower_corpus()
        corpora.append("flowers")
    if args.stars:
        graphs += star_corpus()
        corpora.append("stars")
    if args.fixtures:
        corpora.append("fixtures")
        if args.long:
            budget = replace(budget, **LONG_BUDGET)
    if not corpora:
        print("verify: choose at least one of --trees, --blocks, --flowers, --stars, --fixtures", file=sys.stderr)
        return 2
    options = VerifyOptions(policies=tuple(args.policy or ["max"]), variants=tuple(args.e2 or ["bridges"]),
                            char=args.char, gb_route=args.gb, betti_method=args.betti,
                            oracle=not args.no_oracle, budget=budget)
    records = run_verification(graphs, options, jobs=args.jobs)
    if args.fixtures:
        fixture_opts = replace(options, oracle=options.oracle and args.long)
        fixture_records = run_verification(fixture_corpus(), fixture_opts)
        for r in fixture_records:
            if not args.long and r.reg is None:
                r.skipped = "oracle: gated behind --long"
        records = sorted(records + fixture_records, key=lambda r: r.key)
    meta = {"corpora": corpora, "seed": args.seed, "count": args.count, "maxN": args.max_n,
            "policies": list(options.policies), "variants": list(options.variants), "char": args.char,
            "gb": args.gb, "betti": args.betti, "oracle": options.oracle,
            "blockGraphConfig": asdict(BlockGraphConfig())}
    fmt = "json" if args.json or (args.out and args.out.endswith(".json")) else "csv"
    if args.out:
        emit_report(records, fmt, args.out, meta)
    else:
        sys.stdout.write(render_json(records, meta) if fmt == "json" else render_csv(records))
    stats = summarize(records)
    print("verify: " + ", ".join(f"{k}={v}" for k, v in stats.items()), file=sys.stderr)
    return 1 if stats["violations"] else 0


def _gen(args: argparse.Namespace) -> int:
    if args.family == "flower":
        g = flower(args.h, args.k)
    elif args.family == "star":
        g = star_of_cliques([args.size] * args.k)
    elif args.family == "caterpillar":
        g = caterpillar([int(x) for x in args.legs.split(",")])
    elif args.family == "path":
        g = path_graph(args.n)
    else:
        g = random_block_graph(random.Random(args.seed), args.n)
    if args.format == "graph6":
        print(to_graph6(g))
    else:
        sys.stdout.write(to_edge_list(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beireg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="spines, bound certificates and classification as JSON")
    _add_input(p)
    p.add_argument("--policy", choices=tuple(POLICY_NAMES), default="max")
    p.add_argument("--e2", choices=("bridges", "literal"), default="bridges")
    p.add_argument("--dot", help="also write the graph as DOT, selected spine highlighted")
    p.set_defaults(func=_analyze)

    p = sub.add_parser("reg", help="Betti table and regularity of S/J_G")
    _add_input(p)
    _add_algebra(p)
    p.add_argument("--json", action="store_true", help="JSON only, no table")
    p.add_argument("--dump-gb", action="store_true", help="print the reduced Groebner basis instead")
    p.set_defaults(func=_reg)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("--trees", action="store_true", help="all trees with 2..max-n vertices")
    p.add_argument("--blocks", action="store_true", help="seeded random block graphs")
    p.add_argument("--flowers", action="store_true", help="F_{1,1}, F_{2,1}, F_{1,2}")
    p.add_argument("--stars", action="store_true", help="two and three triangles at a vertex")
    p.add_argument("--fixtures", action="store_true", help="the 17-vertex worked example")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--policy", action="append", choices=tuple(POLICY_NAMES),
                   help="spine policy; repeatable, first one is primary (default max)")
    p.add_argument("--e2", action="append", choices=("bridges", "literal"),
                   help="e2 variant; repeatable, first one is primary (default bridges)")
    _add_algebra(p)
    p.add_argument("--no-oracle", action="store_true", help="bounds only")
    p.add_argument("--long", action="store_true", help="run the n=17 oracle on the fixture")
    p.add_argument("--out", help="report path (.json selects JSON)")
    p.add_argument("--json", action="store_true", help="JSON report")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_verify)

    p = sub.add_parser("gen", help="emit a graph as an edge list")
    p.add_argument("family", choices=("flower", "star", "caterpillar", "path", "random"))
    p.add_argument("--h", type=int, default=1, help="flower: number of triangles")
    p.add_argument("--k", type=int, default=1, help="flower: number of K_{1,3}; star: number of cliques")
    p.add_argument("--size", type=int, default=3, help="star: clique size")
    p.add_argument("--legs", default="1,1", help="caterpillar: leaves per spine vertex, comma separated")
    p.add_argument("--n", type=int, default=6, help="path/random: vertex count (random: maximum)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.set_defaults(func=_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, BudgetExceeded, NonSquarefreeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
