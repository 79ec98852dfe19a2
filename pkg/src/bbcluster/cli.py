"""Command-line entry point: ``bbcluster <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 input/parse/I-O error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import formats, oracle
from .errors import CapacityError, InputError
from .formats import ensure_dir
from .ingest import WeightedGraph, ingest, probabilize
from .metrics import balcan_distance, symdiff_distance
from .sampling import sample_many
from .selection import SelectionParams, select_candidate
from .sweep import SweepConfig, run_sweep, write_sweep

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(0), help="master seed (unsigned 64-bit)")
    parser.add_argument("--threads", type=int, default=d(1), help="worker threads")
    parser.add_argument("--output", "-o", default=d(None), help="output directory")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bbcluster", description="One-pass random-subgraph clustering toolkit.")
    _global_flags(p, suppress=False)
    p.add_argument("--debug", action="store_true", help="verbose logging")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kw):
        sp = sub.add_parser(name, **kw)
        _global_flags(sp, suppress=True)
        return sp

    sp = add("ingest", help="ratings -> normalized (and optionally probabilistic) graph")
    sp.add_argument("input")
    sp.add_argument("--t", type=float, help="threshold; also write graph.tsv with p = min(1, w/t)")

    sp = add("sample", help="draw clusterings from a probabilistic graph")
    sp.add_argument("graph")
    sp.add_argument("--count", type=int, default=1)

    sp = add("distance", help="distance of a sample clustering from a reference")
    sp.add_argument("reference")
    sp.add_argument("sample")
    sp.add_argument("--metric", choices=["symdiff", "balcan"], default="symdiff")
    sp.add_argument("--verbose", "-v", action="store_true", help="print the optimal matching")

    sp = add("select", help="best-of-m candidate selection")
    sp.add_argument("graph")
    sp.add_argument("--epsilon", type=float, default=1.0)
    sp.add_argument("--tau", type=float, default=0.1)
    sp.add_argument("--delta", type=float, default=0.5)
    sp.add_argument("--p", type=float, default=0.1, help="estimation failure probability")
    sp.add_argument("--m", type=int, help="override candidate count")
    sp.add_argument("--l", type=int, help="override evaluator count")
    sp.add_argument("--chernoff-constant", type=float, default=2.0)

    sp = add("sweep", help="component sizes, benefits and pairwise distances over a t range")
    sp.add_argument("graph", help="normalized weight graph (u<TAB>v<TAB>w)")
    sp.add_argument("--t-min", type=float, default=2.0)
    sp.add_argument("--t-max", type=float, default=30.0)
    sp.add_argument("--t-step", type=float, default=2.0)
    sp.add_argument("--samples-per-t", type=int, default=30)

    sp = add("oracle", help="exhaustive computations on tiny instances")
    osub = sp.add_subparsers(dest="oracle_command", required=True, parser_class=_Parser)
    o = osub.add_parser("exact", help="exact outcome distribution of a small graph")
    o.add_argument("graph")
    for name in ("optimal", "ratio"):
        o = osub.add_parser(name, help=f"{name} for an explicit distribution file")
        o.add_argument("distribution")
        o.add_argument("--metric", choices=["symdiff", "balcan"], default="symdiff")
    o = osub.add_parser("tightness", help="the two-outcome tightness distribution")
    o.add_argument("k", type=int)
    return p


def _need_output(args) -> Path:
    if args.output is None:
        raise UsageError(f"{args.command} requires --output <dir>")
    return ensure_dir(args.output)


def _read_weighted(path) -> WeightedGraph:
    n, u, v, w = formats.read_edge_table(path)
    return WeightedGraph(n, u, v, w)


def cmd_ingest(args) -> int:
    out = _need_output(args)
    g, names = ingest(args.input)
    formats.write_edge_table(out / "normalized.tsv", g.n, g.u, g.v, g.w)
    formats.write_symbols(out / "symbols.tsv", names)
    if args.t is not None:
        formats.write_graph(out / "graph.tsv", probabilize(g, args.t))
    print(f"{g.n} nodes, {g.num_edges} edges -> {out}")
    return EXIT_OK


def cmd_sample(args) -> int:
    out = _need_output(args)
    if args.count < 1:
        raise UsageError("--count must be positive")
    g = formats.read_graph(args.graph)
    for i, c in enumerate(sample_many(g, args.seed, args.count, threads=args.threads)):
        formats.write_clustering(out / f"sample_{i:05d}.tsv", c)
    print(f"wrote {args.count} clusterings to {out}")
    return EXIT_OK


def cmd_distance(args) -> int:
    x = formats.read_clustering(args.reference)
    y = formats.read_clustering(args.sample)
    if args.metric == "balcan":
        print(balcan_distance(x, y))
        return EXIT_OK
    d, matching = symdiff_distance(x, y)
    print(d)
    if args.verbose:
        print("y_cluster\tx_cluster\tcost\tbenefit")
        for ylab, xlab, cost, ben in matching.pairs:
            print(f"{ylab}\t{'-' if xlab is None else xlab}\t{cost}\t{ben}")
    return EXIT_OK


def cmd_select(args) -> int:
    out = _need_output(args)
    g = formats.read_graph(args.graph)
    params = SelectionParams.derive(g.n, args.epsilon, args.tau, args.delta, args.p,
                                    m=args.m, l=args.l, chernoff_constant=args.chernoff_constant)
    res = select_candidate(g, params, args.seed, threads=args.threads)
    formats.write_clustering(out / "chosen.tsv", res.chosen)
    with open(out / "scores.csv", "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("candidate_index", "d_i"))
        w.writerows((i, repr(d)) for i, d in enumerate(res.scores))
    print(f"m={params.m} l={params.l} chosen={res.chosen_index} d={res.scores[res.chosen_index]!r}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    out = _need_output(args)
    cfg = SweepConfig(args.t_min, args.t_max, args.t_step, args.samples_per_t, args.seed)
    result = run_sweep(_read_weighted(args.graph), cfg, threads=args.threads)
    for path in write_sweep(result, out).values():
        print(path)
    return EXIT_OK


def cmd_oracle(args) -> int:
    sub = args.oracle_command
    if sub == "exact":
        d = oracle.exact_outcome_distribution(formats.read_graph(args.graph))
    elif sub == "tightness":
        d = oracle.tightness_distribution(args.k)
    else:
        d = formats.read_distribution(args.distribution)
        if sub == "optimal":
            c, cost = oracle.optimal_clustering(d, args.metric)
            print(f"{cost}\t{','.join(map(str, c.labels.tolist()))}")
        else:
            print(oracle.expected_sample_ratio(d, args.metric))
        return EXIT_OK
    if args.output is not None:
        formats.write_distribution(ensure_dir(args.output) / "distribution.tsv", d)
    else:
        for c, q in d.outcomes:
            print(f"{q}\t{','.join(map(str, c.labels.tolist()))}")
    return EXIT_OK


COMMANDS = {
    "ingest": cmd_ingest,
    "sample": cmd_sample,
    "distance": cmd_distance,
    "select": cmd_select,
    "sweep": cmd_sweep,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.debug else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bbcluster: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"bbcluster: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, OSError) as exc:
        print(f"bbcluster: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
