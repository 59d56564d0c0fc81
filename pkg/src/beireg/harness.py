"""Verification campaigns: corpora, per-graph records and report files."""

from __future__ import annotations

import csv
import io
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .betti import Budget, BudgetExceeded, regularity_oracle
from .blocks import GraphClass, classify, longest_induced_path
from .bounds import BoundCertificate, HypothesisError, theorem_bound
from .canon import canonical_encode, enumerate_trees
from .graph import Graph, GraphError, complete_graph, flower, glue, star_of_cliques
from .groebner import DEFAULT_CHAR, NonSquarefreeError

# -- the worked example ----------------------------------------------------------

PAPER_VERTICES = ("a1", "a2", "a3", "a4", "a5", "t1", "t2", "p", "p1",
                  "q", "q1", "q2", "r", "r1", "r2", "r3", "r4")
PAPER_EDGES = (
    ("a1", "a2"), ("a2", "a3"), ("a3", "a4"), ("a4", "a5"),   # horizontal spine
    ("a2", "t1"), ("a4", "t2"),
    ("a3", "p"), ("p", "p1"),
    ("a3", "q"), ("q", "q1"), ("q", "q2"),
    ("a3", "r"),
    ("r", "r1"), ("r", "r2"), ("r", "r3"), ("r1", "r2"), ("r1", "r3"), ("r2", "r3"),  # K4
    ("r", "r4"),
)


def paper_example() -> Graph:
    """The 17-vertex block graph with one K4 end-block hanging off ``a3`` via ``r``."""
    index = {name: i + 1 for i, name in enumerate(PAPER_VERTICES)}
    return Graph.from_edges(len(PAPER_VERTICES), ((index[a], index[b]) for a, b in PAPER_EDGES),
                            PAPER_VERTICES)


def paper_vertex(name: str) -> int:
    return PAPER_VERTICES.index(name) + 1


# -- corpora ---------------------------------------------------------------------

@dataclass(frozen=True)
class BlockGraphConfig:
    clique_sizes: tuple[int, ...] = (2, 3, 4)
    clique_weights: tuple[float, ...] = (0.4, 0.35, 0.25)
    min_n: int = 4
    # share of vertices placed in the tree skeleton before cliques are hung on it
    skeleton_share: float = 0.5


def random_block_graph(rng: random.Random, max_n: int, config: BlockGraphConfig = BlockGraphConfig()) -> Graph:
    """Random tree skeleton with cliques hung on skeleton vertices, so every large block is an end-block."""
    target = rng.randint(min(config.min_n, max_n), max_n)
    skeleton = max(2, min(target, round(target * config.skeleton_share)))
    edges = [(rng.randint(1, v - 1), v) for v in range(2, skeleton + 1)]
    n = skeleton
    while n < target:
        size = rng.choices(config.clique_sizes, config.clique_weights)[0]
        size = min(size, target - n + 1)
        at = rng.randint(1, skeleton)
        members = [at] + list(range(n + 1, n + size))
        edges.extend((a, b) for i, a in enumerate(members) for b in members[i + 1:])
        n += size - 1
    return Graph.from_edges(n, edges)


def tree_corpus(max_n: int, min_n: int = 2) -> list[Graph]:
    return [t for n in range(min_n, max_n + 1) for t in enumerate_trees(n)]


def block_corpus(max_n: int, seed: int, count: int, config: BlockGraphConfig = BlockGraphConfig()) -> list[Graph]:
    """``count`` pairwise non-isomorphic random block graphs (fewer if the space runs dry)."""
    rng = random.Random(seed)
    seen: set[str] = set()
    out = []
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        g = random_block_graph(rng, max_n, config)
        key = record_key(g)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


def flower_corpus() -> list[Graph]:
    return [flower(1, 1), flower(2, 1), flower(1, 2)]


def star_corpus() -> list[Graph]:
    return [star_of_cliques([3, 3]), star_of_cliques([3, 3, 3])]


def fixture_corpus() -> list[Graph]:
    return [paper_example()]


# -- records ---------------------------------------------------------------------

@dataclass(frozen=True)
class VerifyOptions:
    policies: tuple[str, ...] = ("max",)
    variants: tuple[str, ...] = ("bridges",)
    char: int = DEFAULT_CHAR
    gb_route: str = "buchberger"
    betti_method: str = "hochster"
    oracle: bool = True
    budget: Budget = field(default_factory=Budget.from_env)


@dataclass
class VerificationRecord:
    key: str
    n: int
    m: int
    graph_class: GraphClass
    ell_induced: int
    n_minus_1: int
    # "policy/variant" -> bound value; empty when the bound does not apply
    bounds: dict[str, int]
    upper_bound_paper: int | None
    bound_max: int | None
    bound_min: int | None
    certificate: BoundCertificate | None
    certificates: list[BoundCertificate]
    reg: int | None = None
    tight: bool | None = None
    violations: list[tuple[str, str, int]] = field(default_factory=list)
    skipped: str | None = None
    edges: list[tuple[int, int]] = field(default_factory=list)

    def csv_row(self) -> dict[str, str]:
        c = self.certificate

        def fmt(v) -> str:
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            return str(v)

        return {
            "key": self.key,
            "n": fmt(self.n),
            "m": fmt(self.m),
            "class": self.graph_class.summary(),
            "ell_induced": fmt(self.ell_induced),
            "spine_len": fmt(c.ell if c else None),
            "e2": fmt(c.e2 if c else None),
            "b": fmt(c.b if c else None),
            "csum": fmt(c.c_sum if c else None),
            "bound_max": fmt(self.bound_max),
            "bound_min": fmt(self.bound_min),
            "n_minus_1": fmt(self.n_minus_1),
            "reg": fmt(self.reg),
            "tight": fmt(self.tight),
            "violations": ";".join(f"{p}/{v}#{i}" for p, v, i in self.violations),
        }

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "n": self.n,
            "m": self.m,
            "edges": [list(e) for e in self.edges],
            "class": asdict(self.graph_class) | {"summary": self.graph_class.summary()},
            "ellInduced": self.ell_induced,
            "nMinus1": self.n_minus_1,
            "bounds": self.bounds,
            "upperBoundPaper": self.upper_bound_paper,
            "boundMax": self.bound_max,
            "boundMin": self.bound_min,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "certificates": [c.to_dict() for c in self.certificates],
            "reg": self.reg,
            "tight": self.tight,
            "violations": [{"policy": p, "variant": v, "spineIndex": i} for p, v, i in self.violations],
            "skipped": self.skipped,
        }


def record_key(g: Graph) -> str:
    try:
        return canonical_encode(g)
    except GraphError:
        # too symmetric for the brute-force canonical form: fall back to the labelled edge set
        return "L:" + ",".join(f"{u}-{v}" for u, v in g.sorted_edges())


def verify_graph(g: Graph, options: VerifyOptions = VerifyOptions()) -> VerificationRecord:
    cls = classify(g)
    bounds: dict[str, int] = {}
    selected: dict[str, int | None] = {}
    certs: dict[str, tuple[BoundCertificate, ...]] = {}
    for variant in options.variants:
        for policy in ("max", "min") + tuple(options.policies):
            name = f"{policy}/{variant}"
            if name in bounds:
                continue
            try:
                tb = theorem_bound(g, variant, policy)
            except (HypothesisError, GraphError):
                break
            bounds[name] = tb.value
            selected[name] = tb.selected
            certs[variant] = tb.certificates
    primary = f"{options.policies[0]}/{options.variants[0]}"
    variant0 = options.variants[0]
    cert_list = list(certs.get(variant0, ()))
    sel = selected.get(primary)
    record = VerificationRecord(
        key=record_key(g),
        n=g.n,
        m=g.m,
        graph_class=cls,
        ell_induced=longest_induced_path(g),
        n_minus_1=g.n - 1,
        bounds=bounds,
        upper_bound_paper=bounds.get(primary),
        bound_max=bounds.get(f"max/{variant0}"),
        bound_min=bounds.get(f"min/{variant0}"),
        certificate=cert_list[sel] if sel is not None else None,
        certificates=cert_list,
        edges=g.sorted_edges(),
    )
    if options.oracle:
        try:
            record.reg = regularity_oracle(g, options.char, options.gb_route, options.betti_method, options.budget)
        except (BudgetExceeded, NonSquarefreeError) as exc:
            record.skipped = f"oracle: {exc}"
    if record.reg is not None:
        if record.upper_bound_paper is not None:
            record.tight = record.reg == record.upper_bound_paper
        for policy in options.policies:
            for variant in options.variants:
                name = f"{policy}/{variant}"
                if name in bounds and bounds[name] < record.reg:
                    idx = selected[name]
                    record.violations.append((policy, variant, -1 if idx is None else idx))
    return record


def _verify_one(args: tuple[Graph, VerifyOptions]) -> VerificationRecord:
    return verify_graph(*args)


def run_verification(graphs: Iterable[Graph], options: VerifyOptions = VerifyOptions(),
                     jobs: int = 1) -> list[VerificationRecord]:
    """Verify every graph; records come back sorted by canonical key."""
    work = [(g, options) for g in graphs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_verify_one, work))
    else:
        records = [_verify_one(w) for w in work]
    return sorted(records, key=lambda r: r.key)


# -- reports ---------------------------------------------------------------------

CSV_COLUMNS = ("key", "n", "m", "class", "ell_induced", "spine_len", "e2", "b", "csum",
               "bound_max", "bound_min", "n_minus_1", "reg", "tight", "violations")


def render_csv(records: Sequence[VerificationRecord]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def render_json(records: Sequence[VerificationRecord], meta: dict | None = None) -> str:
    doc = {"meta": meta or {}, "records": [r.to_dict() for r in records]}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def emit_report(records: Sequence[VerificationRecord], fmt: str, path: str | Path,
                meta: dict | None = None) -> Path:
    if fmt == "csv":
        text = render_csv(records)
    elif fmt == "json":
        text = render_json(records, meta)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    out = Path(path)
    try:
        out.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {out}: {exc}") from exc
    return out


def summarize(records: Sequence[VerificationRecord]) -> dict[str, int]:
    return {
        "records": len(records),
        "with_oracle": sum(r.reg is not None for r in records),
        "tight": sum(bool(r.tight) for r in records),
        "skipped": sum(r.skipped is not None for r in records),
        "violations": sum(len(r.violations) for r in records),
    }


def clique_glued_at(g: Graph, v: int, size: int) -> Graph:
    """Glue a ``size``-clique onto vertex ``v`` of ``g`` (v becomes label 1)."""
    return glue([(g, v), (complete_graph(size), 1)])
