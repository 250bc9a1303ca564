"""Route metrics and the MaxFlowRouting vs shortest-path comparison runs.

For every ordered pair (s, t) both primary routes are extracted; averages
are taken over the pairs whose two routes differ.
"""

from __future__ import annotations

import csv
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import __version__, bulk
from .graph import Graph, Route
from .tables import (STANDARD_WEIGHTS, RoutingTable, Weights, all_neighbor_scores,
                     build_tables_dijkstra, build_tables_maxflow, primary_route)
from .topology import GeneratorSpec, TopologyError, generate, load_topology

log = logging.getLogger(__name__)

CSV_COLUMNS = (
    "topology", "n", "params", "w1", "w2", "pairs_total", "pairs_diff", "route_diff_pct",
    "mf_avg_size", "mf_avg_deg_sum", "mf_avg_backups",
    "dj_avg_size", "dj_avg_deg_sum", "dj_avg_backups",
)


class ConfigError(ValueError):
    """Experiment configuration rejected before any computation."""


# --- metrics ---------------------------------------------------------------

def route_size(r: Route) -> int:
    return r.size()


def degree_sum(g: Graph, r: Route) -> int:
    """Sum of degrees in ``g`` over all route vertices, endpoints included."""
    return sum(g.degree(v) for v in r)


def backups_per_vertex(g: Graph, r: Route, solver: Optional[bulk.FlowSolver] = None) -> Fraction:
    """Edge-disjoint backup paths per interior vertex.

    The route's own edges are removed; each interior vertex then counts its
    edge-disjoint paths to the destination, and the total is divided by the
    number of interior vertices.
    """
    if r.size() < 3:
        raise ValueError("backups are undefined for a route without interior vertices")
    stripped = (solver or bulk.FlowSolver(g)).without_edges(r.edges())
    t = r.destination
    total = sum(stripped.value(v, t) for v in r.vertices[1:-1])
    return Fraction(total, r.size() - 2)


@dataclass(frozen=True)
class RouteMetrics:
    size: int
    deg_sum: int
    backups: Optional[Fraction]


class MetricCache:
    """Memoised metrics per route on one graph; routes recur across weightings."""

    def __init__(self, g: Graph):
        self.graph = g
        self.solver = bulk.FlowSolver(g)
        self._memo: dict[tuple, RouteMetrics] = {}

    def __call__(self, r: Route) -> RouteMetrics:
        key = r.vertices
        m = self._memo.get(key)
        if m is None:
            b = backups_per_vertex(self.graph, r, self.solver) if r.size() >= 3 else None
            m = RouteMetrics(r.size(), degree_sum(self.graph, r), b)
            self._memo[key] = m
        return m


@dataclass(frozen=True)
class PairResult:
    src: int
    dst: int
    mf_route: Optional[Route]
    dj_route: Optional[Route]
    differs: bool
    mf: Optional[RouteMetrics]
    dj: Optional[RouteMetrics]


def compare_pair(g: Graph, mf_tables: Mapping[int, RoutingTable],
                 dj_tables: Mapping[int, RoutingTable], s: int, t: int,
                 w: Optional[Weights] = None, cache: Optional[MetricCache] = None) -> PairResult:
    # w is carried for symmetry with the tables it built; the tables already encode it
    if cache is None:
        cache = MetricCache(g)
    mf = primary_route(mf_tables, g, s, t)
    dj = primary_route(dj_tables, g, s, t)
    differs = mf is not None and dj is not None and mf != dj
    return PairResult(s, t, mf, dj, differs,
                      cache(mf) if mf is not None else None,
                      cache(dj) if dj is not None else None)


# --- aggregation -----------------------------------------------------------

@dataclass(frozen=True)
class MetricsRecord:
    topology: str
    n: int
    params: str
    w1: int
    w2: int
    pairs_total: int
    pairs_diff: int
    route_diff_pct: Fraction
    mf_avg_size: Optional[Fraction]
    mf_avg_deg_sum: Optional[Fraction]
    mf_avg_backups: Optional[Fraction]
    dj_avg_size: Optional[Fraction]
    dj_avg_deg_sum: Optional[Fraction]
    dj_avg_backups: Optional[Fraction]

    def row(self) -> list[str]:
        def fmt(x):
            return "" if x is None else f"{float(x):.4f}"
        return [self.topology, str(self.n), self.params, str(self.w1), str(self.w2),
                str(self.pairs_total), str(self.pairs_diff), fmt(self.route_diff_pct),
                fmt(self.mf_avg_size), fmt(self.mf_avg_deg_sum), fmt(self.mf_avg_backups),
                fmt(self.dj_avg_size), fmt(self.dj_avg_deg_sum), fmt(self.dj_avg_backups)]


def _mean(values: Sequence) -> Optional[Fraction]:
    return Fraction(sum(values), len(values)) if values else None


def aggregate(topology: str, n: int, params: str, w: Weights,
              pairs: Iterable[PairResult]) -> MetricsRecord:
    pairs = list(pairs)
    both = [p for p in pairs if p.mf_route is not None and p.dj_route is not None]
    diff = [p for p in both if p.differs]
    pct = Fraction(100 * len(diff), len(both)) if both else Fraction(0)
    return MetricsRecord(
        topology, n, params, w.w1, w.w2, len(both), len(diff), pct,
        _mean([p.mf.size for p in diff]),
        _mean([p.mf.deg_sum for p in diff]),
        _mean([p.mf.backups for p in diff]),
        _mean([p.dj.size for p in diff]),
        _mean([p.dj.deg_sum for p in diff]),
        _mean([p.dj.backups for p in diff]),
    )


# --- experiment driver -----------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    """Either a generator spec plus seeds, or one fixed topology."""

    weights: tuple[Weights, ...] = STANDARD_WEIGHTS
    spec: Optional[GeneratorSpec] = None
    seeds: tuple[int, ...] = ()
    topology: Optional[str] = None
    jobs: int = 1

    def validate(self) -> None:
        if not self.weights:
            raise ConfigError("at least one weight pair is required")
        if len(set(self.weights)) != len(self.weights):
            raise ConfigError("duplicate weight pairs")
        if (self.spec is None) == (self.topology is None):
            raise ConfigError("exactly one topology source is required (generator or file/name)")
        if self.spec is not None:
            if not self.seeds:
                raise ConfigError("generated topologies need at least one seed")
            if len(set(self.seeds)) != len(self.seeds):
                raise ConfigError("duplicate seeds")
            try:
                for seed in self.seeds:
                    self.spec.with_seed(seed).validate()
            except TopologyError as e:
                raise ConfigError(str(e)) from None
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    def instances(self) -> list[tuple[str, str, Optional[int]]]:
        if self.spec is not None:
            return [(self.spec.family, self.spec.params, s) for s in self.seeds]
        return [(_label(self.topology), "", None)]


def _label(topology: str) -> str:
    base = os.path.basename(str(topology))
    return os.path.splitext(base)[0] or base


def evaluate_instance(g: Graph, weights: Sequence[Weights]) -> dict[Weights, list[PairResult]]:
    """All ordered-pair comparisons on one graph, per weight pair."""
    dj_tables = build_tables_dijkstra(g)
    scores = all_neighbor_scores(g)
    cache = MetricCache(g)
    nodes = g.nodes()
    out = {}
    for w in weights:
        mf_tables = build_tables_maxflow(g, w, scores)
        out[w] = [compare_pair(g, mf_tables, dj_tables, s, t, w, cache)
                  for s in nodes for t in nodes if s != t]
    return out


def _run_instance(config: ExperimentConfig, seed: Optional[int]):
    if config.spec is not None:
        g = generate(config.spec.with_seed(seed))
    else:
        g = load_topology(config.topology)
    log.info("instance seed=%s: %d nodes, %d edges", seed, g.node_count, g.edge_count)
    return g.node_count, evaluate_instance(g, config.weights)


@dataclass
class ExperimentResult:
    records: list[MetricsRecord]
    # (topology, params, w) -> pair results behind that record
    pairs: dict[tuple[str, str, Weights], list[PairResult]] = field(default_factory=dict)


def run_experiment_detailed(config: ExperimentConfig) -> ExperimentResult:
    config.validate()
    instances = config.instances()
    seeds = [seed for _, _, seed in instances]
    if config.jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as ex:
            results = list(ex.map(_run_instance, [config] * len(seeds), seeds))
    else:
        results = [_run_instance(config, s) for s in seeds]

    out = ExperimentResult([])
    for w in config.weights:
        pooled: list[PairResult] = []
        n = None
        for (label, params, seed), (n, per_w) in zip(instances, results):
            p = params if seed is None else (f"{params};seed={seed}" if params else f"seed={seed}")
            out.records.append(aggregate(label, n, p, w, per_w[w]))
            out.pairs[(label, p, w)] = per_w[w]
            pooled.extend(per_w[w])
        if len(instances) > 1:
            label, params, _ = instances[0]
            p = f"{params};seed=pooled" if params else "seed=pooled"
            out.records.append(aggregate(label, n, p, w, pooled))
    return out


def run_experiment(config: ExperimentConfig) -> list[MetricsRecord]:
    return run_experiment_detailed(config).records


# --- CSV output --------------------------------------------------------------

def records_csv(records: Iterable[MetricsRecord], argv: Optional[Sequence[str]] = None) -> str:
    buf = io.StringIO()
    if argv is not None:
        buf.write(f"# flowroute {__version__} argv: {' '.join(argv)}\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for r in records:
        wr.writerow(r.row())
    return buf.getvalue()


PAIR_COLUMNS = ("topology", "params", "w1", "w2", "src", "dst", "mf_route", "dj_route",
                "differs", "mf_size", "mf_deg_sum", "mf_backups",
                "dj_size", "dj_deg_sum", "dj_backups")


def _route_str(r: Optional[Route]) -> str:
    return "" if r is None else "-".join(map(str, r.vertices))


def _metric_cells(m: Optional[RouteMetrics]) -> list[str]:
    if m is None:
        return ["", "", ""]
    return [str(m.size), str(m.deg_sum), "" if m.backups is None else str(m.backups)]


def pairs_csv(pairs: Mapping[tuple[str, str, Weights], list[PairResult]]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(PAIR_COLUMNS)
    for (label, params, w), results in pairs.items():
        for p in results:
            wr.writerow([label, params, w.w1, w.w2, p.src, p.dst,
                         _route_str(p.mf_route), _route_str(p.dj_route), int(p.differs),
                         *_metric_cells(p.mf), *_metric_cells(p.dj)])
    return buf.getvalue()


def read_pairs_csv(text: str) -> dict[tuple[str, str, Weights], list[PairResult]]:
    """Inverse of :func:`pairs_csv`."""
    def route(cell):
        return Route(int(x) for x in cell.split("-")) if cell else None

    def metrics(size, deg, backups):
        if not size:
            return None
        return RouteMetrics(int(size), int(deg), Fraction(backups) if backups else None)

    out: dict = {}
    for row in csv.DictReader(io.StringIO(text)):
        key = (row["topology"], row["params"], Weights(int(row["w1"]), int(row["w2"])))
        out.setdefault(key, []).append(PairResult(
            int(row["src"]), int(row["dst"]), route(row["mf_route"]), route(row["dj_route"]),
            row["differs"] == "1",
            metrics(row["mf_size"], row["mf_deg_sum"], row["mf_backups"]),
            metrics(row["dj_size"], row["dj_deg_sum"], row["dj_backups"])))
    return out
