"""Exact win probabilities for a fixed symmetric policy.

The coupled equations over all alive positions split into small blocks: group
positions by the unordered pair of banked scores {b, c}. A coin toss never
changes banked scores (tails swaps perspective, keeping the pair), while a
stop strictly increases the pair's total. Solving blocks in decreasing order
of b + c therefore meets only already-known values on stop rows, and each
block is a linear system in at most 2n variables instead of one giant one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .exact_math import LinearSystem, solve_exact
from .game_core import (
    Action,
    GameParams,
    Outcome,
    Position,
    alive_positions,
    decision_positions,
    step,
)

HALF = Fraction(1, 2)
ONE = Fraction(1)

Lookup = Callable[[Position], Fraction]


def saved_pair_blocks(params: GameParams) -> list[tuple[int, int]]:
    """Unordered banked-score pairs (x <= y), deepest total first."""
    n = params.n
    pairs = [(x, y) for x in range(n) for y in range(x, n)]
    pairs.sort(key=lambda p: (-(p[0] + p[1]), -p[0]))
    return pairs


def block_positions(params: GameParams, x: int, y: int) -> list[Position]:
    n = params.n
    out = [Position(a, x, y) for a in range(n - x)]
    if x != y:
        out += [Position(a, y, x) for a in range(n - y)]
    return out


def solve_block(params: GameParams, x: int, y: int,
                policy: Mapping[Position, Action],
                lookup: Lookup) -> dict[Position, Fraction]:
    """Exact values for block {x, y} given values of deeper positions.

    `lookup` resolves any position outside the block (always a stop target,
    which lands in a block with a larger banked total). Stop rows are
    constants, so they are substituted up front and only forced-toss and
    continue rows enter the linear system.
    """
    n = params.n
    values: dict[Position, Fraction] = {}
    variables: list[Position] = []
    for pos in block_positions(params, x, y):
        if pos.a >= 1 and policy[pos] is Action.STOP:
            values[pos] = ONE - lookup(Position(0, pos.c, pos.a + pos.b))
        else:
            variables.append(pos)

    equations = []
    for pos in variables:
        a, b, c = pos
        coeffs = {pos: ONE}
        flip = Position(0, c, b)
        coeffs[flip] = coeffs.get(flip, Fraction(0)) + HALF
        rhs = HALF
        up = Position(a + 1, b, c)
        if a + 1 + b == n:
            rhs += HALF
        elif up in values:
            rhs += HALF * values[up]
        else:
            coeffs[up] = coeffs.get(up, Fraction(0)) - HALF
        equations.append((coeffs, rhs))

    solved = solve_exact(LinearSystem.from_maps(variables, equations))
    values.update(solved)
    return values


def evaluate_policy(params: GameParams,
                    policy: Mapping[Position, Action],
                    ) -> dict[Position, Fraction]:
    """Exact value of every alive position under a total symmetric policy."""
    values: dict[Position, Fraction] = {}
    for x, y in saved_pair_blocks(params):
        values.update(solve_block(params, x, y, policy, values.__getitem__))
    return values


def action_values(pos: Position, params: GameParams,
                  values: Mapping[Position, Fraction],
                  ) -> tuple[Fraction, Fraction | None]:
    """One-step (continue, stop) values at pos given exact position values."""
    a, b, c = pos
    n = params.n
    heads = ONE if a + 1 + b == n else values[Position(a + 1, b, c)]
    cont = HALF * (ONE - values[Position(0, c, b)]) + HALF * heads
    if a == 0:
        return cont, None
    return cont, ONE - values[Position(0, c, a + b)]


def one_step_violations(params: GameParams,
                        policy: Mapping[Position, Action],
                        values: Mapping[Position, Fraction],
                        ) -> tuple[list[tuple[Position, Action]], set[Position]]:
    """Positions where the unchosen action is exactly better, plus exact ties.

    Returns (violations as (position, better_action), ties). An empty
    violation list certifies the policy is one-step optimal against its own
    values, which for this game class pins the unique optimum.
    """
    violations = []
    ties = set()
    for pos in decision_positions(params):
        cont, stop = action_values(pos, params, values)
        if cont == stop:
            ties.add(pos)
        elif policy[pos] is Action.CONTINUE and stop > cont:
            violations.append((pos, Action.STOP))
        elif policy[pos] is Action.STOP and cont > stop:
            violations.append((pos, Action.CONTINUE))
    return violations, ties


def reachable_positions(params: GameParams,
                        policy: Mapping[Position, Action],
                        ) -> set[Position]:
    """Alive positions reachable from the opening position under a policy."""
    start = Position(0, 0, 0)
    seen = {start}
    stack = [start]
    while stack:
        pos = stack.pop()
        if pos.a >= 1 and policy[pos] is Action.STOP:
            moves = [(Action.STOP, None)]
        else:
            moves = [(Action.CONTINUE, Outcome.HEADS),
                     (Action.CONTINUE, Outcome.TAILS)]
        for action, outcome in moves:
            t = step(pos, action, params, outcome)
            if t.next_position is not None and t.next_position not in seen:
                seen.add(t.next_position)
                stack.append(t.next_position)
    return seen
