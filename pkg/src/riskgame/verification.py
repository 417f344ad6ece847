"""Self-check battery: regression fixtures and cross-method consistency.

The fixture fractions are the known optimal values for small targets; the
structural checks (identities, one-step optimality, method agreement) hold
for every target and catch regressions the fixtures cannot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analytic import solve_analytic
from .evaluation import action_values, one_step_violations, reachable_positions
from .game_core import (
    Action,
    GameParams,
    Position,
    alive_positions,
    decision_positions,
    new_positions,
)
from .interval import Solution, solve_iterative
from .policy_doc import build_policy_document, canonical_json
from .strategy_analysis import all_in_report, extract_thresholds, p_all, p_split

F = Fraction

P_FIRST = {
    2: F(4, 7),
    3: F(6, 11),
    4: F(2236, 4165),
    5: F(1026, 1925),
    6: F(275848876, 521145625),
}

# position values of the solved small targets, (n, a, b, c) -> value
KNOWN_VALUES = {
    (2, 0, 0, 0): F(4, 7),
    (2, 0, 0, 1): F(2, 5),
    (2, 0, 1, 0): F(4, 5),
    (2, 0, 1, 1): F(2, 3),
    (2, 1, 0, 0): F(5, 7),
    (2, 1, 0, 1): F(3, 5),
    (3, 0, 0, 0): F(6, 11),
    (3, 0, 1, 0): F(8, 11),
    (3, 0, 2, 0): F(8, 9),
    (3, 0, 2, 1): F(4, 5),
    (3, 0, 2, 2): F(2, 3),
    (3, 0, 1, 1): F(4, 7),
    (3, 0, 1, 2): F(2, 5),
    (3, 0, 0, 1): F(4, 11),
    (3, 0, 0, 2): F(2, 9),
    (3, 1, 0, 0): F(7, 11),
    (3, 2, 0, 0): F(7, 9),
}

# reachable stop positions of the optimum, per target
REACHABLE_STOPS = {
    3: {Position(1, 0, 0)},
    4: {Position(1, 2, 0), Position(2, 0, 0), Position(2, 0, 2)},
}

ALL_IN_ANCHORS = {1: F(2, 3), 2: F(2, 5), 3: F(2, 9)}
SPLIT_ANCHORS = {(2, 1): F(2, 9), (3, 1): F(2, 15), (4, 2): F(2, 25)}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _forced_toss_residual(solution: Solution) -> list[Position]:
    """Positions violating P(0,b,c) = 1/3 + 2/3 P(1,b,c) - 1/3 P(1,c,b)."""
    n = solution.n
    bad = []
    for b in range(n):
        for c in range(n):
            ref_bc = F(1) if 1 + b == n else solution.values[Position(1, b, c)]
            ref_cb = F(1) if 1 + c == n else solution.values[Position(1, c, b)]
            want = F(1, 3) + F(2, 3) * ref_bc - F(1, 3) * ref_cb
            if solution.values[Position(0, b, c)] != want:
                bad.append(Position(0, b, c))
    return bad


def run_battery(n_max: int = 6,
                solve: Callable[[GameParams], Solution] = solve_iterative,
                ) -> list[CheckResult]:
    """Run every self-check up to n_max; returns one result per check."""
    results: list[CheckResult] = []
    solutions = {n: solve(GameParams(n)) for n in range(2, n_max + 1)}

    def check(name: str, passed: bool, detail: str = "") -> None:
        results.append(CheckResult(name, passed, detail))

    bad = [(n, str(solutions[n].p_first), str(expect))
           for n, expect in P_FIRST.items()
           if n <= n_max and solutions[n].p_first != expect]
    check("first-player values", not bad, f"mismatches: {bad}" if bad else
          f"targets 2..{min(n_max, 6)} exact")

    bad = [(key, str(solutions[key[0]].values[Position(*key[1:])]))
           for key, expect in KNOWN_VALUES.items()
           if key[0] <= n_max
           and solutions[key[0]].values[Position(*key[1:])] != expect]
    check("known position values", not bad, f"mismatches: {bad}" if bad
          else "all fixture positions exact")

    bad = []
    for n, expect in REACHABLE_STOPS.items():
        if n > n_max:
            continue
        sol = solutions[n]
        reach = reachable_positions(GameParams(n), sol.policy)
        stops = {p for p, act in sol.policy.items()
                 if act is Action.STOP} & reach
        if stops != expect:
            bad.append((n, sorted(map(tuple, stops))))
    check("reachable stop sets", not bad, f"mismatches: {bad}" if bad
          else "targets 3 and 4 as expected")

    agree_max = min(n_max, 6)
    bad = []
    for n in range(2, agree_max + 1):
        doc_iter = canonical_json(build_policy_document(solutions[n]))
        doc_ana = canonical_json(
            build_policy_document(solve_analytic(GameParams(n)).solution))
        if doc_iter != doc_ana:
            bad.append(n)
    check("methods agree", not bad,
          f"documents differ at {bad}" if bad else
          f"canonical documents byte-identical for 2..{agree_max}")

    bad = [(n, len(_forced_toss_residual(solutions[n])))
           for n in range(2, n_max + 1)
           if _forced_toss_residual(solutions[n])]
    check("forced-toss identity", not bad, f"violations: {bad}" if bad
          else "residuals exactly zero")

    bad = []
    for n in range(2, n_max + 1):
        violations, _ = one_step_violations(
            GameParams(n), solutions[n].policy, solutions[n].values)
        if violations:
            bad.append((n, len(violations)))
    check("one-step optimality", not bad, f"violations: {bad}" if bad
          else "no profitable deviation anywhere")

    bad = [r for r in range(2, 31) if not all_in_report(r).dominance_holds]
    anchor_bad = ([r for r, v in ALL_IN_ANCHORS.items() if p_all(r) != v]
                  + [rx for rx, v in SPLIT_ANCHORS.items()
                     if p_split(*rx) != v])
    check("all-in closed forms", not bad and not anchor_bad,
          f"dominance fails at {bad}, anchors off at {anchor_bad}"
          if bad or anchor_bad else "dominance holds for r <= 30")

    bad = [n for n in range(1, 51)
           if len(alive_positions(GameParams(n))) != n * n * (n + 1) // 2
           or len(new_positions(GameParams(n))) != (3 * n * n - n) // 2
           or len(decision_positions(GameParams(n))) != (n - 1) * n * n // 2]
    check("position counts", not bad, f"formula breaks at {bad}" if bad
          else "counts match for n <= 50")

    if n_max >= 3:
        small, large = n_max - 1, n_max
        t_small = extract_thresholds(solutions[small]).thresholds
        t_large = extract_thresholds(solutions[large]).thresholds
        bad = [k for k in t_small if t_small[k] != t_large[k]]
        check("threshold needs-consistency", not bad,
              f"cells differ between {small} and {large}: {bad}" if bad
              else f"grids for {small} and {large} agree on overlap")

    return results
