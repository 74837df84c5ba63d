"""Command-line entry point.

Exit codes: 0 feasible (and target met, if given), 1 feasible but target
missed, 2 infeasible, 3 input or configuration error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import io, oracle, solvers
from .model import InstanceError, SimpleGraph, canon, div_min, div_total, vc_as_hitting_set
from .solvers import DiverseQuery, DiverseResult, check_target

EXIT_OK, EXIT_MISSED, EXIT_INFEASIBLE, EXIT_INPUT = 0, 1, 2, 3


def load_instance(problem: str, text: str):
    kind = io.header_kind(text)
    if problem == "hitting-set":
        return io.parse_hypergraph(text)
    if problem == "vertex-cover" and kind == "hs":
        inst = io.parse_hypergraph(text)
        if inst.d > 2:
            raise InstanceError("vertex-cover instance must have d <= 2")
        return inst
    return io.parse_graph(text)


def _add_query_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--problem", required=True, choices=solvers.PROBLEMS)
    p.add_argument("--measure", required=True, choices=solvers.MEASURES)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-t", type=int, default=None, help="diversity target")
    p.add_argument("-i", "--input", required=True, help="instance file, '-' for stdin")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--parallel", type=int, default=1, help="worker processes")
    p.add_argument("--tuple-budget", type=int, default=solvers.DEFAULT_TUPLE_BUDGET)
    p.add_argument("-o", "--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diversefpt",
                                     description="Maximally diverse solution tuples for "
                                                 "hitting set, vertex cover and FVS.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute a maximally diverse r-tuple")
    _add_query_args(p)
    p.add_argument("--early-exit", action="store_true",
                   help="stop at the first tuple meeting -t")
    p.add_argument("--check-flow", action="store_true",
                   help="verify flow invariants on every augmentation")

    p = sub.add_parser("oracle", help="same query by brute-force enumeration")
    _add_query_args(p)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=("path", "cycle", "random-hs", "random-graph"))
    p.add_argument("params", nargs="*", help="key=value, e.g. n=10 m=5 d=3 p=0.4")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("check", help="re-verify an emitted result file")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--solutions", required=True, help="JSON result file")
    p.add_argument("--problem", choices=solvers.PROBLEMS, default=None)
    p.add_argument("--measure", choices=solvers.MEASURES, default=None)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _exit_code(res: DiverseResult) -> int:
    if not res.feasible:
        return EXIT_INFEASIBLE
    if res.meets_target is False:
        return EXIT_MISSED
    return EXIT_OK


def _run_oracle(query: DiverseQuery, instance, cap: int) -> DiverseResult:
    best, value = oracle.oracle_optimum(query.problem, instance, query.k, query.r,
                                        query.measure, cap=cap)
    res = DiverseResult(query.problem, query.measure, query.k, query.r, best is not None,
                        best, value, method="oracle")
    return check_target(res, query.t)


def cmd_solve(args) -> int:
    query = DiverseQuery(args.problem, args.measure, args.k, args.r, args.t)
    instance = load_instance(args.problem, _read(args.input))
    if args.command == "oracle":
        res = _run_oracle(query, instance, args.tuple_budget)
    else:
        res = solvers.solve(query, instance, workers=args.parallel,
                            tuple_budget=args.tuple_budget, early_exit=args.early_exit,
                            check_flow=args.check_flow)
    _write(io.emit_result(res, args.format), args.output)
    return _exit_code(res)


def cmd_gen(args) -> int:
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"generator parameter {item!r} is not key=value")
        params[key] = value
    _write(io.generate(args.kind, params, args.seed), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    data = json.loads(_read(args.solutions))
    problem = args.problem or data.get("problem")
    measure = args.measure or data.get("measure")
    if problem not in solvers.PROBLEMS:
        raise ValueError("cannot tell the problem; pass --problem")
    instance = load_instance(problem, _read(args.input))
    if problem == "vertex-cover" and isinstance(instance, SimpleGraph):
        instance = vc_as_hitting_set(instance)
    valid = instance.is_fvs if problem == "fvs" else instance.is_hitting_set
    if not data.get("feasible"):
        print("result reports infeasible; nothing to verify")
        return EXIT_INFEASIBLE
    sols = [canon(s) for s in data["solutions"]]
    problems = []
    if len(sols) != args.r:
        problems.append(f"expected {args.r} solutions, found {len(sols)}")
    for s in sols:
        if len(s) > args.k:
            problems.append(f"{list(s)} exceeds k={args.k}")
        if any(not 1 <= e <= instance.n for e in s) or not valid(s):
            problems.append(f"{list(s)} is not a valid {problem} solution")
    total = div_total(sols)
    if data.get("diversity_total") is not None and data["diversity_total"] != total:
        problems.append(f"diversity_total {data['diversity_total']} != recomputed {total}")
    if len(sols) >= 2:
        dmin = div_min(sols)
        if data.get("diversity_min") is not None and data["diversity_min"] != dmin:
            problems.append(f"diversity_min {data['diversity_min']} != recomputed {dmin}")
    for msg in problems:
        print(msg)
    if problems:
        return EXIT_MISSED
    value = total if measure == "total" else div_min(sols)
    print(f"ok: {len(sols)} valid solutions, {measure} diversity {value}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"solve": cmd_solve, "oracle": cmd_solve, "gen": cmd_gen, "check": cmd_check}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError, solvers.TupleBudgetExceeded, oracle.CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
