"""Experiment orchestration: enumerated, sampled and real-network studies."""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import heuristics
from .game import (
    DEFAULT_EXACT_CAP,
    CohesionVerdict,
    GroupStructure,
    Method,
    Status,
    is_socially_cohesive,
    payoffs,
    quick_rejection,
)
from .graph import (
    Graph,
    enumerate_connected_graphs,
    is_connected,
    largest_component,
    sample_random_graph,
)
from .heuristics import BatchStats, evaluate_graph

log = logging.getLogger(__name__)

CSV_HEADER = ["n", "s", "b", "c", "accuracy", "core_stable_rate", "improved_node_rate", "method", "seed"]
QUANTILES = (0, 25, 50, 75, 100)
EXTRA_HEADER = ["connected", "core_stable", "improved", "nodes"] + [f"q{q}" for q in QUANTILES] \
    + [f"grand_q{q}" for q in QUANTILES]
REAL_HEADER = ["dataset", "N", "E", "method", "communities", "improved_node_rate"] \
    + [f"q{q}" for q in QUANTILES] + ["cohesion", "certificate_source", "certificate_size"]

ENUM_MAX_N = 8
DEFAULT_SAMPLES = 10_000


def quantiles(values: Sequence[Fraction], qs: Iterable[int] = QUANTILES) -> list[Fraction]:
    """Linear-interpolation percentiles computed exactly on rationals."""
    xs = sorted(values)
    if not xs:
        return [Fraction(0) for _ in qs]
    out = []
    for q in qs:
        pos = Fraction(q * (len(xs) - 1), 100)
        lo = pos.numerator // pos.denominator
        frac = pos - lo
        hi = min(lo + 1, len(xs) - 1)
        out.append(xs[lo] + (xs[hi] - xs[lo]) * frac)
    return out


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return f"{float(x):.6f}"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


@dataclass
class ReportRow:
    n: int
    method: str
    seed: int | None
    s: int
    b: int
    c: int
    core_stable: int
    stability_checked: int
    improved: int
    nodes: int
    connected: int
    payoff_quantiles: list[Fraction] = field(default_factory=list)
    grand_quantiles: list[Fraction] = field(default_factory=list)

    @property
    def accuracy(self) -> float:
        return (self.b + self.c) / self.s if self.s else float("nan")

    @property
    def core_stable_rate(self) -> float:
        return self.core_stable / self.stability_checked if self.stability_checked else float("nan")

    @property
    def improved_node_rate(self) -> float:
        return self.improved / self.nodes if self.nodes else float("nan")

    @classmethod
    def from_stats(cls, n: int, seed, st: BatchStats, grand: Sequence[Fraction]) -> "ReportRow":
        return cls(n, st.method, seed, st.s, st.b, st.c, st.core_stable, st.stability_checked,
                   st.improved, st.nodes, st.connected,
                   quantiles(st.payoff_samples), quantiles(grand))

    def csv_values(self) -> list[str]:
        base = [self.n, self.s, self.b, self.c, self.accuracy, self.core_stable_rate,
                self.improved_node_rate, self.method, "" if self.seed is None else self.seed]
        extra = [self.connected, self.core_stable, self.improved, self.nodes,
                 *self.payoff_quantiles, *self.grand_quantiles]
        return [_fmt(x) for x in base + extra]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["payoff_quantiles"] = [str(x) for x in self.payoff_quantiles]
        d["grand_quantiles"] = [str(x) for x in self.grand_quantiles]
        d.update(accuracy=self.accuracy, core_stable_rate=self.core_stable_rate,
                 improved_node_rate=self.improved_node_rate)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ReportRow":
        keys = {f for f in cls.__dataclass_fields__}
        kw = {k: v for k, v in d.items() if k in keys}
        kw["payoff_quantiles"] = [Fraction(x) for x in kw.get("payoff_quantiles", [])]
        kw["grand_quantiles"] = [Fraction(x) for x in kw.get("grand_quantiles", [])]
        return cls(**kw)


@dataclass
class ExperimentReport:
    mode: str
    rows: list[ReportRow]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER + EXTRA_HEADER)
        for row in self.rows:
            w.writerow(row.csv_values())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"mode": self.mode, "rows": [r.to_dict() for r in self.rows]}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentReport":
        d = json.loads(text)
        return cls(d["mode"], [ReportRow.from_dict(r) for r in d["rows"]])

    def row(self, n: int, method: str) -> ReportRow:
        for r in self.rows:
            if r.n == n and r.method == method:
                return r
        raise KeyError((n, method))


# -- batch machinery -------------------------------------------------------------

def _evaluate_one(args):
    g, methods, exact_cap, check_stability = args
    stats = evaluate_graph(g, methods, exact_cap, check_stability, keep_payoffs=True)
    grand = [p.as_fraction() for p in payoffs(g, GroupStructure.grand(g.n))]
    return stats, grand


def _sample_one(args):
    n, seed, i, connected_only, methods, exact_cap, check_stability = args
    g = sampled_graph(n, seed, i, connected_only)
    return _evaluate_one((g, methods, exact_cap, check_stability))


def sampled_graph(n: int, seed: int, i: int, connected_only: bool = False) -> Graph:
    """The ``i``-th sample of size ``n``; its randomness depends only on ``(seed, n, i)``."""
    attempt = 0
    while True:
        g = sample_random_graph(n, [seed, n, i, attempt])
        if not connected_only or is_connected(g):
            return g
        attempt += 1


def _aggregate(n, seed, methods, results) -> list[ReportRow]:
    totals = {m: BatchStats(m) for m in methods}
    grand: list[Fraction] = []
    for stats, gp in results:
        grand.extend(gp)
        for m in methods:
            totals[m] = totals[m].merge(stats[m])
    return [ReportRow.from_stats(n, seed, totals[m], grand) for m in methods]


def _run(fn, tasks, workers: int):
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (8 * workers))))


def cmd_enumerate(n: int, methods: Sequence[str] = heuristics.METHODS, exact_cap: int = DEFAULT_EXACT_CAP,
                  check_stability: bool = True, workers: int = 1) -> ExperimentReport:
    """Score the heuristics on every connected graph with ``n`` nodes (up to isomorphism)."""
    if not 3 <= n <= ENUM_MAX_N:
        raise ValueError(f"enumeration supports 3 <= n <= {ENUM_MAX_N}")
    graphs = enumerate_connected_graphs(n)
    log.info("enumerated %d connected graphs on %d nodes", len(graphs), n)
    tasks = [(g, list(methods), exact_cap, check_stability) for g in graphs]
    results = _run(_evaluate_one, tasks, workers)
    return ExperimentReport("enumerate", _aggregate(n, None, list(methods), results))


def cmd_sample(n: int, count: int = DEFAULT_SAMPLES, seed: int = 0,
               methods: Sequence[str] = heuristics.METHODS, exact_cap: int = DEFAULT_EXACT_CAP,
               check_stability: bool = True, connected_only: bool = False,
               workers: int = 1) -> ExperimentReport:
    """Score the heuristics on ``count`` uniformly sampled labelled graphs of size ``n``."""
    if count < 1:
        raise ValueError("sample count must be positive")
    if n > exact_cap:
        raise ValueError(f"n={n} exceeds the exact cap {exact_cap}")
    tasks = [(n, seed, i, connected_only, list(methods), exact_cap, check_stability) for i in range(count)]
    results = _run(_sample_one, tasks, workers)
    return ExperimentReport("sample", _aggregate(n, seed, list(methods), results))


# -- real networks -----------------------------------------------------------------

@dataclass
class RealRow:
    dataset: str
    N: int
    E: int
    method: str
    communities: int
    improved_node_rate: float
    quantiles: list[Fraction]
    cohesion: str
    certificate_source: str
    certificate_size: int

    def csv_values(self) -> list[str]:
        return [_fmt(x) for x in [self.dataset, self.N, self.E, self.method, self.communities,
                                  self.improved_node_rate, *self.quantiles, self.cohesion,
                                  self.certificate_source, self.certificate_size]]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["quantiles"] = [str(x) for x in self.quantiles]
        return d


@dataclass
class RealReport:
    rows: list[RealRow]
    verdict: CohesionVerdict
    graph: Graph

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REAL_HEADER)
        for r in self.rows:
            w.writerow(r.csv_values())
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"mode": "real", "rows": [r.to_dict() for r in self.rows],
                           "verdict": self.verdict.to_dict(self.graph)}, indent=2)

    def row(self, method: str) -> RealRow:
        return next(r for r in self.rows if r.method == method)


def real_cohesion(g: Graph, methods: Sequence[str] = heuristics.METHODS,
                  exact_cap: int = DEFAULT_EXACT_CAP) -> tuple[CohesionVerdict, str]:
    """Exact below the cap; above it quick tests, then heuristic certificates."""
    if g.n <= exact_cap:
        return is_socially_cohesive(g, exact_cap=exact_cap), "exact"
    v = quick_rejection(g)
    if v is not None:
        return v, "quick"
    for m in methods:
        v = heuristics.heuristic_cohesion_test(g, m)
        if v.status is Status.NOT_COHESIVE:
            return v, m
    return CohesionVerdict(Status.INCONCLUSIVE, Method.QUICK_TEST), "none"


def cmd_real(g: Graph, name: str = "graph", methods: Sequence[str] = heuristics.METHODS,
             exact_cap: int = DEFAULT_EXACT_CAP, seed: int | None = None) -> RealReport:
    """Heuristics on the largest component of a real network."""
    g = largest_component(g)
    verdict, source = real_cohesion(g, methods, exact_cap)
    size = len(verdict.certificate.blocking_set) if verdict.certificate else 0
    grand = GroupStructure.grand(g.n)
    rows = [RealRow(name, g.n, g.num_edges, "grand", 1, 0.0,
                    quantiles([p.as_fraction() for p in payoffs(g, grand)]),
                    verdict.status.value, source, size)]
    for m in methods:
        w = heuristics.group_structure(g, m, seed)
        rows.append(RealRow(name, g.n, g.num_edges, m, len(w),
                            heuristics.improved_nodes(g, w) / g.n,
                            quantiles([p.as_fraction() for p in payoffs(g, w)]),
                            verdict.status.value, source, size))
    return RealReport(rows, verdict, g)


def merge_reports(texts: Iterable[str]) -> ExperimentReport:
    rows = []
    mode = None
    for t in texts:
        r = ExperimentReport.from_json(t)
        mode = r.mode if mode in (None, r.mode) else "mixed"
        rows.extend(r.rows)
    rows.sort(key=lambda r: (r.n, r.method))
    return ExperimentReport(mode or "empty", rows)
