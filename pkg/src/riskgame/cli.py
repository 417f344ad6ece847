"""Command-line interface.

Subcommands: solve, table, verify, simulate, serve.  Exit codes: 0 success,
1 usage error, 2 iteration did not converge, 3 verification mismatch or
strategy-search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .analytic import BudgetExceeded, solve_analytic
from .game_core import GameParams
from .interval import NotConverged, Solution, solve_iterative
from .policy_doc import (
    DocumentError,
    build_policy_document,
    canonical_json,
    fraction_fields,
    load_policy_document,
)
from .server import PolicyService, serve_forever
from .simulation import PolicyPair, estimate
from .strategy_analysis import extract_thresholds
from .verification import run_battery

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2
EXIT_MISMATCH = 3

ANALYTIC_MAX_N = 6

log = logging.getLogger("riskgame.cli")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse default exits with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _solve(n: int, method: str, epsilon: float,
           max_sweeps: int) -> Solution:
    params = GameParams(n)
    if method == "analytic":
        return solve_analytic(params).solution
    return solve_iterative(params, epsilon=epsilon, max_sweeps=max_sweeps)


def cmd_solve(args: argparse.Namespace) -> int:
    if args.n < 2:
        return _fail(EXIT_USAGE,
                     f"solve: --n must be at least 2 (got {args.n}); "
                     "smaller targets have no decisions")
    if args.method == "analytic" and args.n > ANALYTIC_MAX_N:
        return _fail(EXIT_MISMATCH,
                     f"solve: analytic method is limited to n <= "
                     f"{ANALYTIC_MAX_N} (strategy search grows as 2^d); "
                     "use --method iterative")
    try:
        solution = _solve(args.n, args.method, args.epsilon, args.max_sweeps)
    except NotConverged as exc:
        return _fail(EXIT_NOT_CONVERGED, f"solve: {exc}")
    except BudgetExceeded as exc:
        return _fail(EXIT_MISMATCH, f"solve: {exc}")
    text = canonical_json(build_policy_document(solution))
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
        log.info("wrote policy for n=%d to %s", args.n, args.out)
    return EXIT_OK


def _render_ascii(n: int, rows: list[list[int]]) -> str:
    width = max(2, len(str(n)))
    heads = " ".join(f"{s:>{width}}" for s in range(2, n + 1))
    label = "Points Player 1 needs"
    pad = len(label)
    lines = [
        f"Stop thresholds for target {n}",
        f"{'':>{pad}}   Points Opponent needs",
        f"{label:>{pad}} | {heads}",
        f"{'-' * pad}-+-{'-' * len(heads)}",
    ]
    for r, row in zip(range(2, n + 1), rows):
        cells = " ".join(f"{t:>{width}}" for t in row)
        lines.append(f"{r:>{pad}} | {cells}")
    return "\n".join(lines) + "\n"


def _render_csv(n: int, rows: list[list[int]]) -> str:
    header = "r\\s," + ",".join(str(s) for s in range(2, n + 1))
    lines = [header]
    for r, row in zip(range(2, n + 1), rows):
        lines.append(f"{r}," + ",".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def cmd_table(args: argparse.Namespace) -> int:
    if args.n < 2:
        return _fail(EXIT_USAGE,
                     f"table: --n must be at least 2 (got {args.n})")
    try:
        solution = solve_iterative(GameParams(args.n))
    except NotConverged as exc:
        return _fail(EXIT_NOT_CONVERGED, f"table: {exc}")
    table = extract_thresholds(solution)
    rows = table.rows()
    if args.format == "ascii":
        sys.stdout.write(_render_ascii(args.n, rows))
    elif args.format == "csv":
        sys.stdout.write(_render_csv(args.n, rows))
    else:
        sys.stdout.write(canonical_json({"n": args.n, "thresholds": rows}))
    return EXIT_OK


def _verify_policy_file(path: str) -> int:
    """Byte-compare a stored policy document against a fresh solve."""
    try:
        text = Path(path).read_text(encoding="utf-8")
        stored = load_policy_document(text)
    except (OSError, DocumentError, json.JSONDecodeError) as exc:
        print(f"[FAIL] policy file {path}: {exc}")
        return EXIT_MISMATCH
    fresh = solve_iterative(GameParams(stored.n))
    expected = canonical_json(build_policy_document(fresh))
    if text != expected:
        got = json.loads(text)
        want = json.loads(expected)
        diffs = [key for key in want if got.get(key) != want[key]]
        print(f"[FAIL] policy file {path}: differs from a fresh solve "
              f"for n={stored.n} in fields {diffs}")
        return EXIT_MISMATCH
    print(f"[ok]   policy file {path}: byte-identical to a fresh solve "
          f"(n={stored.n})")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    status = EXIT_OK
    if args.policy:
        status = max(status, _verify_policy_file(args.policy))
    results = run_battery(args.n_max)
    for res in results:
        mark = "[ok]  " if res.passed else "[FAIL]"
        print(f"{mark} {res.name}: {res.detail}")
        if not res.passed:
            status = max(status, EXIT_MISMATCH)
    total = sum(1 for r in results if r.passed)
    print(f"{total}/{len(results)} checks passed (n_max={args.n_max})")
    return status


def cmd_simulate(args: argparse.Namespace) -> int:
    if args.trials < 1:
        return _fail(EXIT_USAGE, "simulate: --trials must be positive")
    if args.policy is not None:
        try:
            solution = load_policy_document(
                Path(args.policy).read_text(encoding="utf-8"))
        except (OSError, DocumentError, json.JSONDecodeError) as exc:
            return _fail(EXIT_MISMATCH, f"simulate: policy file: {exc}")
        if solution.n != args.n:
            return _fail(EXIT_USAGE,
                         f"simulate: policy file is for n={solution.n}, "
                         f"requested n={args.n}")
    else:
        if args.n < 2:
            return _fail(EXIT_USAGE,
                         f"simulate: --n must be at least 2 (got {args.n})")
        solution = solve_iterative(GameParams(args.n))
    pair = PolicyPair.symmetric(solution)
    report = estimate(pair, args.trials, args.seed)
    exact = solution.p_first
    sigma = ((report.estimate - float(exact)) / report.std_error
             if report.std_error > 0 else 0.0)
    sys.stdout.write(canonical_json({
        "n": report.n,
        "trials": report.trials,
        "seed": report.seed,
        "wins_first": report.wins_first,
        "estimate": report.estimate,
        "std_error": report.std_error,
        "exact": fraction_fields(exact),
        "deviation_sigma": sigma,
    }))
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    solutions: dict[int, Solution] = {}
    for path in args.policy or []:
        try:
            sol = load_policy_document(
                Path(path).read_text(encoding="utf-8"))
        except (OSError, DocumentError, json.JSONDecodeError) as exc:
            return _fail(EXIT_MISMATCH, f"serve: policy file {path}: {exc}")
        solutions[sol.n] = sol
    for n in args.n or []:
        if n < 2:
            return _fail(EXIT_USAGE,
                         f"serve: --n must be at least 2 (got {n})")
        if n not in solutions:
            try:
                solutions[n] = solve_iterative(GameParams(n))
            except NotConverged as exc:
                return _fail(EXIT_NOT_CONVERGED, f"serve: {exc}")
    if not solutions:
        return _fail(EXIT_USAGE,
                     "serve: need at least one --n or --policy")
    serve_forever(PolicyService(solutions), args.host, args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="riskgame",
                     description="Exact solver and tools for the "
                                 "Risk-or-Safety coin game.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute an optimal policy and "
                       "write it as a JSON document")
    p.add_argument("--n", type=int, required=True, help="target score")
    p.add_argument("--method", choices=("iterative", "analytic"),
                   default="iterative")
    p.add_argument("--out", default=None, help="output path (default "
                   "stdout)")
    p.add_argument("--epsilon", type=float, default=1e-12,
                   help="decision margin for interval iteration")
    p.add_argument("--max-sweeps", type=int, default=10000)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("table", help="print the stop-threshold grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("ascii", "csv", "json"),
                   default="ascii")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the self-check battery")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--policy", default=None,
                   help="also byte-compare this policy document against "
                        "a fresh solve")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="Monte-Carlo estimate under "
                       "optimal play")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--policy", default=None,
                   help="simulate a stored policy document instead of "
                        "solving")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="serve policies over HTTP")
    p.add_argument("--n", type=int, nargs="*", default=None,
                   help="targets to solve and serve")
    p.add_argument("--policy", nargs="*", default=None,
                   help="policy document files to serve")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def _configure_logging() -> None:
    level = os.environ.get("RISKGAME_LOG")
    if level:
        logging.basicConfig(
            level=getattr(logging, level.upper(), logging.INFO),
            format="%(asctime)s %(name)s %(levelname)s %(message)s")


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
