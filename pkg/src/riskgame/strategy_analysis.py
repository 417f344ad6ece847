"""Structure of optimal play: stop thresholds and all-in benchmarks.

Optimal actions depend only on needs (r, s) = (points the mover still wants,
points the opponent still wants) and the open count a. For each needs pair
the optimal rule is a threshold: continue below t, stop at t and above, with
t = r meaning all-in (never stop). The lookup grid for r, s in 2..n is the
playing aid this package exists to produce.

The all-in closed forms cover the limiting case s = 1 (opponent about to
win): a mover needing r and never stopping wins 2 / (2^r + 1); banking once
at x < r instead lowers that to 2 / ((2^x + 1) (2^(r-x) + 1)), so against a
one-point opponent stopping is always wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .game_core import Action, Position
from .interval import Solution


def p_all(r: int) -> Fraction:
    """All-in win probability needing r against an opponent needing 1."""
    if r < 1:
        raise ValueError(f"needs at least 1, got {r}")
    return Fraction(2, 2 ** r + 1)


def p_split(r: int, x: int) -> Fraction:
    """Like p_all, but banking once at x open points before going for r - x."""
    if r < 2:
        raise ValueError(f"splitting needs r >= 2, got {r}")
    if not 1 <= x <= r - 1:
        raise ValueError(f"split point must lie in 1..{r - 1}, got {x}")
    return Fraction(2, (2 ** x + 1) * (2 ** (r - x) + 1))


@dataclass(frozen=True)
class AllInReport:
    r: int
    p_all: Fraction
    splits: tuple[tuple[int, Fraction], ...]
    dominance_holds: bool


def all_in_report(r: int) -> AllInReport:
    """p_all against every one-bank split; dominance means all-in beats all."""
    value = p_all(r)
    splits = tuple((x, p_split(r, x)) for x in range(1, r))
    return AllInReport(r, value, splits,
                       all(split < value for _, split in splits))


@dataclass
class ThresholdTable:
    """Minimal open count at which stopping is optimal, per needs pair.

    thresholds[(r, s)] = t in 1..r, where t = r means never stop (all-in);
    ties marks entries whose defining stop decision is an exact tie;
    violations lists (r, s, a) where continue reappears above the threshold
    (none are known to occur; kept as a diagnostic).
    """

    n: int
    thresholds: dict[tuple[int, int], int]
    ties: set[tuple[int, int]]
    violations: list[tuple[int, int, int]]

    def rows(self) -> list[list[int]]:
        return [[self.thresholds[(r, s)] for s in range(2, self.n + 1)]
                for r in range(2, self.n + 1)]


def extract_thresholds(solution: Solution) -> ThresholdTable:
    n = solution.n
    thresholds: dict[tuple[int, int], int] = {}
    ties: set[tuple[int, int]] = set()
    violations: list[tuple[int, int, int]] = []
    for r in range(2, n + 1):
        for s in range(2, n + 1):
            b, c = n - r, n - s
            t = r
            for a in range(1, r):
                if solution.policy[Position(a, b, c)] is Action.STOP:
                    t = a
                    break
            thresholds[(r, s)] = t
            if t < r:
                if Position(t, b, c) in solution.ties:
                    ties.add((r, s))
                for a in range(t + 1, r):
                    if solution.policy[Position(a, b, c)] is Action.CONTINUE:
                        violations.append((r, s, a))
    return ThresholdTable(n, thresholds, ties, violations)


@dataclass(frozen=True)
class SpecialRows:
    """The two degenerate needs rows the 2..n grid leaves out.

    r = 1 never yields a decision (one open point already wins). s = 1 rows
    do appear in the grid only via r >= 2; all_in_everywhere reports whether
    the solved policy continues at every position where the opponent needs
    one point, matching the closed-form dominance argument.
    """

    no_decisions_when_mover_needs_one: bool
    all_in_when_opponent_needs_one: bool


def special_rows(solution: Solution) -> SpecialRows:
    n = solution.n
    no_decisions = not any(pos.b == n - 1 for pos in solution.policy)
    all_in = all(action is Action.CONTINUE
                 for pos, action in solution.policy.items()
                 if pos.c == n - 1)
    return SpecialRows(no_decisions, all_in)


def oeis_export(solutions: dict[int, Solution],
                max_n: int | None = None) -> list[tuple[int, int, int]]:
    """(n, numerator, denominator) of the first mover's win chance, n >= 2."""
    if max_n is None:
        max_n = max(solutions)
    out = []
    for n in range(2, max_n + 1):
        if n not in solutions:
            raise KeyError(f"no solution for target {n}")
        p = solutions[n].p_first
        out.append((n, p.numerator, p.denominator))
    return out


def format_oeis(entries: list[tuple[int, int, int]]) -> str:
    """One line per target: \"n numerator denominator\"."""
    return "\n".join(f"{n} {num} {den}" for n, num, den in entries) + "\n"
