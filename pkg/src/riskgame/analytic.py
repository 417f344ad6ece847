"""Optimal strategy by exact enumeration over candidate stop sets.

Targets are solved bottom-up: positions where both players have banked
points replay a smaller target's opening (equal needs views), so only new
positions (b = 0 or c = 0) require fresh work. Those split into components
by the banked pair {0, k}; stop moves leave a component toward deeper ones,
so components are enumerated deepest first. Within a component every
continue/stop assignment over its decision slots is solved exactly, and the
unique assignment that is one-step stable (no single deviation improves the
mover's exact value) is kept. Exact ties resolve to Stop and are flagged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping

from .evaluation import ONE, action_values, solve_block
from .exact_math import LinearSystem, solve_exact
from .game_core import (
    Action,
    GameParams,
    NeedsView,
    Position,
    alive_positions,
    decision_positions,
    needs_view,
    new_positions,
)
from .interval import Solution


class BudgetExceeded(Exception):
    """Enumeration would evaluate more systems than the budget allows."""


class MissingKnownValue(KeyError):
    """The known-values table lacks a reduced position's needs view."""


@dataclass
class StrategyAssignment:
    """Actions for every new decision position of one target."""

    n: int
    decisions: dict[Position, Action]


@dataclass
class StrategyReport:
    """Outcome of an analytic solve: the stable assignment and its values."""

    n: int
    assignment: StrategyAssignment
    values: dict[Position, Fraction]
    ties: frozenset[Position]
    systems_evaluated: int
    solution: Solution


class _ChainValues(dict):
    """Component-local values backed by already-solved deeper positions."""

    def __init__(self, base, fallback):
        super().__init__(base)
        self._fallback = fallback

    def __missing__(self, key):
        return self._fallback(key)


def build_equations(strategy: StrategyAssignment,
                    known: Mapping[NeedsView, Fraction]) -> LinearSystem:
    """One equation per new position of the target, in one coupled system.

    Forced-toss rows average the two coin outcomes; continue rows do the
    same with the decision kept open; stop rows are 1 minus the opponent's
    restart value, which is either another new position (mover had no
    banked points) or a `known` reduced value from a smaller target.
    """
    params = GameParams(strategy.n)
    n = params.n
    variables = new_positions(params)
    labels = set(variables)
    half = Fraction(1, 2)
    equations = []
    for pos in variables:
        a, b, c = pos
        if a >= 1 and strategy.decisions[pos] is Action.STOP:
            restart = Position(0, c, a + b)
            if restart in labels:
                equations.append(({pos: ONE, restart: ONE}, ONE))
            else:
                view = needs_view(restart, params)
                if view not in known:
                    raise MissingKnownValue(view)
                equations.append(({pos: ONE}, ONE - known[view]))
            continue
        coeffs = {pos: ONE}
        flip = Position(0, c, b)
        coeffs[flip] = coeffs.get(flip, Fraction(0)) + half
        rhs = half
        if a + 1 + b == n:
            rhs += half
        else:
            up = Position(a + 1, b, c)
            coeffs[up] = coeffs.get(up, Fraction(0)) - half
        equations.append((coeffs, rhs))
    return LinearSystem.from_maps(variables, equations)


def evaluate_strategy(strategy: StrategyAssignment,
                      known: Mapping[NeedsView, Fraction],
                      ) -> dict[Position, Fraction]:
    """Exact value of every new position under a fixed strategy."""
    return solve_exact(build_equations(strategy, known))


def _component_slots(params: GameParams, k: int) -> list[Position]:
    n = params.n
    slots = [Position(a, 0, k) for a in range(1, n)]
    if k >= 1:
        slots += [Position(a, k, 0) for a in range(1, n - k)]
    return slots


def _assignments(slots: list[Position]) -> Iterator[dict[Position, Action]]:
    for choice in product((Action.CONTINUE, Action.STOP), repeat=len(slots)):
        yield dict(zip(slots, choice))


def _solve_component(params: GameParams, k: int,
                     target_values: dict[Position, Fraction],
                     known: Mapping[NeedsView, Fraction],
                     systems_evaluated: int, budget: int,
                     ) -> tuple[dict[Position, Action],
                                dict[Position, Fraction],
                                set[Position], int]:
    """Enumerate component {0, k}, returning its stable actions and values."""

    def lookup(pos: Position) -> Fraction:
        if pos.b == 0 or pos.c == 0:
            return target_values[pos]
        view = needs_view(pos, params)
        if view not in known:
            raise MissingKnownValue(view)
        return known[view]

    slots = _component_slots(params, k)
    stable: list[tuple[dict[Position, Action], dict[Position, Fraction]]] = []
    for assignment in _assignments(slots):
        systems_evaluated += 1
        if systems_evaluated > budget:
            raise BudgetExceeded(
                f"component {{0, {k}}} of target {params.n} pushed the "
                f"count of solved systems past {budget}; use the iterative "
                f"method for targets this size")
        values = solve_block(params, 0, k, assignment, lookup)
        chained = _ChainValues(values, lookup)
        ok = True
        for slot in slots:
            cont, stop = action_values(slot, params, chained)
            chosen = cont if assignment[slot] is Action.CONTINUE else stop
            if max(cont, stop) > chosen:
                ok = False
                break
        if ok:
            stable.append((assignment, values))

    if not stable:
        raise RuntimeError(f"no stable assignment in component {{0, {k}}} "
                           f"of target {params.n}")
    first_values = stable[0][1]
    if any(values != first_values for _, values in stable[1:]):
        raise RuntimeError(f"distinct stable values in component {{0, {k}}} "
                           f"of target {params.n}")

    # canonical actions: recompute from the (unique) values, ties -> Stop
    chained = _ChainValues(first_values, lookup)
    canonical: dict[Position, Action] = {}
    ties: set[Position] = set()
    for slot in slots:
        cont, stop = action_values(slot, params, chained)
        canonical[slot] = Action.STOP if stop >= cont else Action.CONTINUE
        if stop == cont:
            ties.add(slot)
    if canonical not in (assignment for assignment, _ in stable):
        raise RuntimeError("tie canonicalization left the stable set")
    return canonical, first_values, ties, systems_evaluated


def solve_analytic(params: GameParams, budget: int = 100000) -> StrategyReport:
    """Solve every target up to params.n bottom-up; returns the top target.

    `budget` caps the total number of exactly-solved linear systems across
    the whole run; exceeding it raises BudgetExceeded.
    """
    n = params.n
    known: dict[NeedsView, Fraction] = {}
    known_policy: dict[NeedsView, Action] = {}
    known_ties: set[NeedsView] = set()
    systems_evaluated = 0
    target_values: dict[Position, Fraction] = {}
    target_policy: dict[Position, Action] = {}
    target_ties: set[Position] = set()

    for m in range(1, n + 1):
        mp = GameParams(m)
        target_values = {}
        target_policy = {}
        target_ties = set()
        for k in range(m - 1, -1, -1):
            actions, values, ties, systems_evaluated = _solve_component(
                mp, k, target_values, known, systems_evaluated, budget)
            target_values.update(values)
            target_policy.update(actions)
            target_ties |= ties
        for pos in new_positions(mp):
            view = needs_view(pos, mp)
            known[view] = target_values[pos]
            if pos.a >= 1:
                known_policy[view] = target_policy[pos]
                if pos in target_ties:
                    known_ties.add(view)

    values: dict[Position, Fraction] = {}
    for pos in alive_positions(params):
        if pos.b == 0 or pos.c == 0:
            values[pos] = target_values[pos]
        else:
            values[pos] = known[needs_view(pos, params)]
    policy: dict[Position, Action] = {}
    ties: set[Position] = set()
    for pos in decision_positions(params):
        if pos.b == 0 or pos.c == 0:
            policy[pos] = target_policy[pos]
            if pos in target_ties:
                ties.add(pos)
        else:
            view = needs_view(pos, params)
            policy[pos] = known_policy[view]
            if view in known_ties:
                ties.add(pos)

    solution = Solution(n=n, policy=policy, values=values,
                        p_first=values[Position(0, 0, 0)],
                        ties=frozenset(ties), method="analytic", sweeps=None)
    assignment = StrategyAssignment(
        n, {pos: target_policy[pos]
            for pos in new_positions(params) if pos.a >= 1})
    return StrategyReport(n=n, assignment=assignment, values=values,
                          ties=frozenset(ties),
                          systems_evaluated=systems_evaluated,
                          solution=solution)
