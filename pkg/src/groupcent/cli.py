"""Command-line front end: solve, compare, check.

Exit codes: 0 success, 1 usage error, 2 infeasible input (closeness on a
disconnected graph), 3 enumeration-budget refusal.
"""

from __future__ import annotations

import argparse
import math
import sys

from .centrality import group_farness_raw, group_harmonic
from .checks import ALL_SUITES
from .closeness import (DisconnectedGraphError, greedy_closeness,
                        local_search_closeness, multi_swap_closeness)
from .graph import GraphError, is_connected, largest_component, load_edge_list
from .harmonic import greedy_harmonic, local_search_harmonic
from .oracles import BudgetExceededError, best_random, exhaustive_best
from .reporting import CSV_COLUMNS, AlgoConfig, report_to_csv_row

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_BUDGET = 3

ALGOS = ("greedy-h", "ls-h", "greedy-c", "ls-c", "multiswap-c",
         "exact-h", "exact-c", "random-h", "random-c")
CLOSENESS_ALGOS = {"greedy-c", "ls-c", "multiswap-c", "exact-c", "random-c"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_solve_args(p):
    p.add_argument("--graph", required=True, action="append",
                   help="edge-list file; may repeat for compare")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--algo", required=True, choices=ALGOS)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--eps", type=float, default=0.01)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--scc", action="store_true",
                   help="run on the largest (strongly) connected component")
    p.add_argument("--output", choices=("json", "csv"), default="json")


def build_parser():
    parser = _Parser(prog="groupcent",
                     description="Group-harmonic and group-closeness maximization")
    sub = parser.add_subparsers(dest="command", required=True)
    solve = sub.add_parser("solve", help="run one algorithm on one graph")
    _add_solve_args(solve)
    compare = sub.add_parser("compare", help="run an algorithm against a baseline")
    _add_solve_args(compare)
    compare.add_argument("--baseline", required=True, choices=("exact", "random"))
    check = sub.add_parser("check", help="run property-check suites")
    check.add_argument("--suite", default="all",
                       choices=tuple(ALL_SUITES) + ("all",))
    check.add_argument("--graph", default=None,
                       help="optional edge-list file for the sampling suites")
    check.add_argument("--directed", action="store_true")
    check.add_argument("--weighted", action="store_true")
    check.add_argument("--seed", type=int, default=1)
    return parser


def _prepare_graph(args, path):
    g = load_edge_list(path, directed=args.directed, weighted=args.weighted)
    if args.algo in CLOSENESS_ALGOS:
        if is_connected(g):
            return g
        if args.scc:
            return largest_component(g)
        raise DisconnectedGraphError(
            f"{path}: closeness algorithms need a (strongly) connected graph; "
            f"pass --scc to use the largest component")
    if args.scc:
        return largest_component(g)
    return g


def _run_algo(algo, g, cfg):
    if algo == "greedy-h":
        return greedy_harmonic(g, cfg.k, cfg)
    if algo == "ls-h":
        return local_search_harmonic(g, cfg.k, cfg)
    if algo == "greedy-c":
        return greedy_closeness(g, cfg.k, cfg)
    if algo == "ls-c":
        return local_search_closeness(g, cfg.k, cfg)
    if algo == "multiswap-c":
        if not 1 < cfg.p < cfg.k:
            raise UsageError(f"multiswap-c needs 1 < p < k, got p={cfg.p} k={cfg.k}")
        return multi_swap_closeness(g, cfg.k, cfg.p, cfg)
    if algo == "exact-h":
        return exhaustive_best(g, cfg.k, "harmonic", cfg=cfg)
    if algo == "exact-c":
        return exhaustive_best(g, cfg.k, "closeness", cfg=cfg)
    if algo == "random-h":
        return best_random(g, cfg.k, cfg.trials, cfg.seed, "harmonic", cfg=cfg)
    if algo == "random-c":
        return best_random(g, cfg.k, cfg.trials, cfg.seed, "closeness", cfg=cfg)
    raise UsageError(f"unknown algorithm {algo!r}")


def _verify_report(g, report):
    """Emitted objective must match a from-scratch recomputation."""
    if report.objective_kind == "harmonic":
        fresh = group_harmonic(g, report.group).value
        scale = max(1.0, abs(fresh))
        if abs(fresh - report.objective_value) > 1e-12 * scale:
            raise RuntimeError("emitted objective does not match recomputation")
    else:
        raw = group_farness_raw(g, report.group)
        if raw != report.raw_farness:
            raise RuntimeError("emitted raw farness does not match recomputation")


def _emit(report, output):
    if output == "csv":
        print(",".join(CSV_COLUMNS))
        print(report_to_csv_row(report))
    else:
        print(report.to_json())


def _cmd_solve(args):
    if len(args.graph) != 1:
        raise UsageError("solve takes exactly one --graph")
    cfg = _config_from_args(args)
    g = _prepare_graph(args, args.graph[0])
    if args.algo in CLOSENESS_ALGOS:
        if cfg.k >= g.n:
            raise UsageError(f"k={cfg.k} out of range for n={g.n}")
    elif cfg.k > g.n:
        raise UsageError(f"k={cfg.k} out of range for n={g.n}")
    report = _run_algo(args.algo, g, cfg)
    _verify_report(g, report)
    _emit(report, args.output)
    return EXIT_OK


def _config_from_args(args):
    try:
        return AlgoConfig(k=args.k, eps=args.eps, p=args.p, trials=args.trials,
                          seed=args.seed, workers=args.workers,
                          deterministic=args.deterministic)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_compare(args):
    cfg = _config_from_args(args)
    closeness = args.algo in CLOSENESS_ALGOS
    baseline_algo = (("exact-c" if closeness else "exact-h")
                     if args.baseline == "exact"
                     else ("random-c" if closeness else "random-h"))
    import json

    ratios = []
    speeds = []
    for path in args.graph:
        g = _prepare_graph(args, path)
        limit = g.n - 1 if closeness else g.n
        if cfg.k > limit:
            raise UsageError(f"k={cfg.k} out of range for n={g.n}")
        target = _run_algo(args.algo, g, cfg)
        base = _run_algo(baseline_algo, g, cfg)
        _verify_report(g, target)
        _verify_report(g, base)
        # maximization framing for both objectives: higher is better
        if closeness:
            ratio = base.raw_farness / target.raw_farness
        else:
            ratio = (target.objective_value / base.objective_value
                     if base.objective_value > 0 else float("nan"))
        speed = (target.wall_time_millis / base.wall_time_millis
                 if base.wall_time_millis > 0 else float("nan"))
        ratios.append(ratio)
        speeds.append(speed)
        print(json.dumps({
            "graph": path, "algo": args.algo, "baseline": baseline_algo,
            "targetValue": target.objective_value,
            "baselineValue": base.objective_value,
            "qualityRatio": ratio,
            "targetMillis": target.wall_time_millis,
            "baselineMillis": base.wall_time_millis,
            "relativeTime": speed,
        }, separators=(",", ":")))
    if len(args.graph) > 1:
        geo = lambda xs: math.exp(sum(math.log(x) for x in xs) / len(xs))
        print(json.dumps({
            "aggregate": "geometric-mean",
            "graphs": len(args.graph),
            "qualityRatio": geo([r for r in ratios if r > 0]),
            "relativeTime": geo([s for s in speeds if s > 0]),
        }, separators=(",", ":")))
    return EXIT_OK


def _cmd_check(args):
    suites = list(ALL_SUITES) if args.suite == "all" else [args.suite]
    graphs = None
    if args.graph:
        graphs = [load_edge_list(args.graph, directed=args.directed,
                                 weighted=args.weighted)]
    for name in suites:
        fn = ALL_SUITES[name]
        if name in ("submodularity", "bounds") and graphs is not None:
            outcome = fn(graphs=graphs, seed=args.seed)
        else:
            outcome = fn(seed=args.seed)
        print(outcome.summary())
        for note in outcome.notes:
            print(f"  note: {note}")
        for v in outcome.violations[:10]:
            print(f"  counterexample: {v}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "compare":
            return _cmd_compare(args)
        return _cmd_check(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DisconnectedGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
