"""``flowroute`` command line: generate, tables, simulate, experiment.

Exit codes: 0 success, 1 no route (simulate), 2 usage/config error,
3 data or parse error. Set FLOWROUTE_LOG (e.g. INFO, DEBUG) for logging.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import tempfile
from typing import Optional, Sequence

from . import __version__
from .experiments import ConfigError, ExperimentConfig, pairs_csv, records_csv, run_experiment_detailed
from .frr import FailureSet, forward
from .graph import EdgeListError, GraphError, format_edge_list
from .tables import STANDARD_WEIGHTS, Weights, build_tables_dijkstra, build_tables_maxflow, dump_tables
from .topology import FAMILIES, GeneratorSpec, TopologyError, generate, load_topology

EXIT_OK, EXIT_NO_ROUTE, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

log = logging.getLogger("flowroute")


class UsageError(Exception):
    pass


def _weights(text: str) -> Weights:
    try:
        return Weights.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _pair(text: str) -> tuple[int, int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'u,v', got {text!r}") from None
    return u, v


def _seeds(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_generator_args(p: argparse.ArgumentParser, seed_help: Optional[str]) -> None:
    p.add_argument("--n", type=int, help="vertex count for generated graphs")
    p.add_argument("--c", type=float, help="ER edge probability, 0 < C <= 1")
    p.add_argument("--m", type=int, help="BA edges per new vertex")
    p.add_argument("--k", type=int, help="WS ring neighbors (even)")
    p.add_argument("--p", type=float, help="WS rewiring probability")
    if seed_help is not None:
        p.add_argument("--seed", type=int, default=0, help=seed_help)


def _spec(args, family: str, seed: int) -> GeneratorSpec:
    if args.n is None:
        raise UsageError(f"--family {family} requires --n")
    spec = GeneratorSpec(family, args.n, seed, er_c=args.c, ba_m=args.m, ws_k=args.k, ws_p=args.p)
    try:
        spec.validate()
    except TopologyError as e:
        raise UsageError(str(e)) from None
    return spec


def _topology_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--topology", help="vendored name (internet2, geant, rnp, wide) or edge-list path")
    p.add_argument("--family", choices=FAMILIES, help="generate the topology instead of loading one")
    _add_generator_args(p, "seed for --family generation")


def _load_graph(args):
    if (args.topology is None) == (args.family is None):
        raise UsageError("give exactly one of --topology or --family")
    if args.topology is not None:
        return load_topology(args.topology)
    return generate(_spec(args, args.family, args.seed))


def _tables(args, g):
    if args.algo == "dijkstra":
        return build_tables_dijkstra(g)
    return build_tables_maxflow(g, args.weights, jobs=args.jobs)


def _write_atomic(path: str, text: str) -> None:
    """Write via a temporary file so a failure never leaves a partial output."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".flowroute-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- subcommands -------------------------------------------------------------

def cmd_generate(args, argv) -> int:
    spec = _spec(args, args.family, args.seed)
    g = generate(spec)
    text = format_edge_list(g, [f"flowroute {__version__}: {spec.family} n={spec.n} "
                                f"{spec.params} seed={spec.seed}"])
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        _write_atomic(args.output, text)
    return EXIT_OK


def cmd_tables(args, argv) -> int:
    g = _load_graph(args)
    tables = _tables(args, g)
    if args.owner is not None:
        g.check_node(args.owner)
        tables = {args.owner: tables[args.owner]}
    text = dump_tables(tables)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        _write_atomic(args.output, text)
    return EXIT_OK


def cmd_simulate(args, argv) -> int:
    g = _load_graph(args)
    failures = FailureSet(args.fail_link, args.fail_node)
    failures.validate(g)
    g.check_node(args.src)
    g.check_node(args.dst)
    if args.src == args.dst:
        raise UsageError("--src and --dst must differ")
    if failures.node_failed(args.src) or failures.node_failed(args.dst):
        raise UsageError("source and destination cannot be failed nodes")
    out = forward(g, _tables(args, g), failures, args.src, args.dst)
    print("trace: " + " ".join(map(str, out.visited_order)))
    print("visited: " + " ".join(map(str, out.visited)))
    print(f"hops: {out.hop_count}")
    if out.delivered:
        print(f"delivered: {out.final_route}")
        return EXIT_OK
    print(f"no route from {args.src} to {args.dst}")
    return EXIT_NO_ROUTE


def cmd_experiment(args, argv) -> int:
    if args.seeds is not None and args.repeat is not None:
        raise UsageError("give either --seeds or --repeat, not both")
    weights = tuple(args.weights) if args.weights else STANDARD_WEIGHTS
    if args.family == "file":
        if args.topology is None:
            raise UsageError("--family file requires --topology")
        config = ExperimentConfig(weights=weights, topology=args.topology, jobs=args.jobs)
    else:
        if args.topology is not None:
            raise UsageError("--topology is only valid with --family file")
        seeds = args.seeds if args.seeds is not None else list(range(1, (args.repeat or 1) + 1))
        spec = _spec(args, args.family, seeds[0] if seeds else 0)
        config = ExperimentConfig(weights=weights, spec=spec, seeds=tuple(seeds), jobs=args.jobs)
    config.validate()
    if args.family == "file":
        load_topology(args.topology)  # surface data errors before computing
    result = run_experiment_detailed(config)
    text = records_csv(result.records, ["flowroute"] + list(argv))
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        _write_atomic(args.output, text)
    if args.pairs:
        _write_atomic(args.pairs, pairs_csv(result.pairs))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flowroute",
        description="MaxFlowRouting tables, FRR-with-backtracking simulation, and experiments.")
    parser.add_argument("--version", action="version", version=f"flowroute {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    jobs_default = os.cpu_count() or 1

    p = sub.add_parser("generate", help="write a seeded random graph as an edge list")
    p.add_argument("--family", choices=FAMILIES, required=True, help="er, ba or ws")
    _add_generator_args(p, "random seed (64-bit unsigned)")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("tables", help="dump routing tables: 'owner dest : nbr(gamma,flow,dist) ...'")
    _topology_args(p)
    p.add_argument("--algo", choices=("maxflow", "dijkstra"), default="maxflow")
    p.add_argument("--weights", type=_weights, default=Weights(2, -5),
                   help="w1,w2 for maxflow tables (default 2,-5)")
    p.add_argument("--owner", type=int, help="only this node's table")
    p.add_argument("--jobs", type=int, default=jobs_default, help="worker processes")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("simulate", help="forward one packet with FRR and backtracking")
    _topology_args(p)
    p.add_argument("--algo", choices=("maxflow", "dijkstra"), default="maxflow")
    p.add_argument("--weights", type=_weights, default=Weights(2, -5),
                   help="w1,w2 for maxflow tables (default 2,-5)")
    p.add_argument("--fail-link", type=_pair, action="append", default=[], metavar="U,V",
                   help="failed link (repeatable)")
    p.add_argument("--fail-node", type=int, action="append", default=[], metavar="V",
                   help="failed node (repeatable)")
    p.add_argument("--src", type=int, required=True)
    p.add_argument("--dst", type=int, required=True)
    p.add_argument("--jobs", type=int, default=jobs_default, help="worker processes")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("experiment", help="compare MaxFlowRouting with shortest paths, write CSV")
    p.add_argument("--family", choices=FAMILIES + ("file",), required=True,
                   help="generator family, or 'file' to use --topology")
    p.add_argument("--topology", help="vendored name or edge-list path (with --family file)")
    _add_generator_args(p, None)
    p.add_argument("--weights", type=_weights, action="append",
                   help="w1,w2 (repeatable; default: 2,-5 5,-5 5,-1)")
    p.add_argument("--seeds", type=_seeds, help="comma-separated seeds, one instance each")
    p.add_argument("--repeat", type=int, help="shorthand for --seeds 1..K")
    p.add_argument("--jobs", type=int, default=jobs_default, help="worker processes")
    p.add_argument("--pairs", help="also write per-pair results to this CSV")
    p.add_argument("-o", "--output", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=os.environ.get("FLOWROUTE_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args, argv)
    except (UsageError, ConfigError) as e:
        print(f"flowroute {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EdgeListError, GraphError, TopologyError, OSError) as e:
        print(f"flowroute {args.command}: error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
