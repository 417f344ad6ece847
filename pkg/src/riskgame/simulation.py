"""Two-sided matchups: exact values, seeded game traces, Monte-Carlo runs.

Players may follow different policies here, so states carry who moves. The
exact route mirrors the symmetric evaluator: states grouped by the ordered
pair of banked scores form a directed acyclic block structure (tosses keep
the pair, stops increase its total), each block a small exact linear system
in the first player's win probability.

Monte-Carlo runs and single-game traces share one RNG: the splitmix64
stream documented in kernels (one independent substream per game index), so
a kernel batch and a traced replay of the same game index see identical
coins under either backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Mapping

import numpy as np

from . import kernels
from .exact_math import LinearSystem, solve_exact
from .game_core import Action, GameParams, Position, decision_positions
from .interval import Solution

HALF = Fraction(1, 2)

State = tuple[int, int, int, int]  # (mover, open, mover banked, opp banked)


@dataclass
class PolicyPair:
    """Total policies for the first and second player at one target."""

    n: int
    first: dict[Position, Action]
    second: dict[Position, Action]

    def __post_init__(self) -> None:
        required = decision_positions(GameParams(self.n))
        for name, policy in (("first", self.first), ("second", self.second)):
            missing = [p for p in required if p not in policy]
            if missing:
                raise ValueError(f"{name} policy misses {len(missing)} "
                                 f"decision positions, e.g. {missing[0]}")

    @classmethod
    def symmetric(cls, solution: Solution) -> "PolicyPair":
        return cls(solution.n, dict(solution.policy), dict(solution.policy))


@dataclass(frozen=True)
class TraceStep:
    mover: int
    position: Position
    action: str  # "toss" when forced (no open points), else "continue"/"stop"
    outcome: str  # "heads", "tails", or "banked"


@dataclass
class GameRecord:
    winner: int
    steps: list[TraceStep]


@dataclass
class TrialReport:
    n: int
    trials: int
    wins_first: int
    estimate: float
    std_error: float
    seed: int


def policy_array(n: int, policy: Mapping[Position, Action]) -> np.ndarray:
    """Flat int8 lookup (a * n + b) * n + c with 1 = stop, for the kernels."""
    arr = np.zeros(n * n * n, dtype=np.int8)
    for pos in decision_positions(GameParams(n)):
        if policy[pos] is Action.STOP:
            a, b, c = pos
            arr[(a * n + b) * n + c] = 1
    return arr


def _blocks(n: int) -> list[tuple[int, int]]:
    pairs = [(p0, p1) for p0 in range(n) for p1 in range(n)]
    pairs.sort(key=lambda p: (-(p[0] + p[1]), p))
    return pairs


def exact_pair_value(pair: PolicyPair) -> Fraction:
    """Exact probability that the first player wins the full game."""
    n = pair.n
    values: dict[State, Fraction] = {}
    for p0, p1 in _blocks(n):
        states = [(0, a, p0, p1) for a in range(n - p0)]
        states += [(1, a, p1, p0) for a in range(n - p1)]
        variables: list[State] = []
        for st in states:
            mover, a, b, c = st
            policy = pair.first if mover == 0 else pair.second
            if a >= 1 and policy[Position(a, b, c)] is Action.STOP:
                values[st] = values[(1 - mover, 0, c, a + b)]
            else:
                variables.append(st)
        equations = []
        for st in variables:
            mover, a, b, c = st
            coeffs: dict[State, Fraction] = {st: Fraction(1)}
            rhs = Fraction(0)
            if a + 1 + b == n:  # heads wins for the mover
                if mover == 0:
                    rhs += HALF
            else:
                up = (mover, a + 1, b, c)
                if up in values:
                    rhs += HALF * values[up]
                else:
                    coeffs[up] = coeffs.get(up, Fraction(0)) - HALF
            tails = (1 - mover, 0, c, b)
            if tails in values:
                rhs += HALF * values[tails]
            else:
                coeffs[tails] = coeffs.get(tails, Fraction(0)) - HALF
            equations.append((coeffs, rhs))
        values.update(solve_exact(LinearSystem.from_maps(variables, equations)))
    return values[(0, 0, 0, 0)]


def play_game(pair: PolicyPair, seed: int, game_index: int = 0) -> GameRecord:
    """Deterministic single game; same coins as kernel game `game_index`."""
    n = pair.n
    words = kernels.game_word()
    seed_u = kernels.U64(seed)
    game_u = kernels.U64(game_index)
    word_index = 0
    word = int(words(seed_u, game_u, kernels.U64(0)))
    bits_left = 64
    steps: list[TraceStep] = []
    mover, a, b, c = 0, 0, 0, 0
    while True:
        pos = Position(a, b, c)
        policy = pair.first if mover == 0 else pair.second
        if a >= 1 and policy[pos] is Action.STOP:
            steps.append(TraceStep(mover, pos, "stop", "banked"))
            mover, a, b, c = 1 - mover, 0, c, a + b
            continue
        if bits_left == 0:
            word_index += 1
            word = int(words(seed_u, game_u, kernels.U64(word_index)))
            bits_left = 64
        heads = word & 1
        word >>= 1
        bits_left -= 1
        action = "continue" if a >= 1 else "toss"
        if heads:
            steps.append(TraceStep(mover, pos, action, "heads"))
            a += 1
            if a + b == n:
                return GameRecord(mover, steps)
        else:
            steps.append(TraceStep(mover, pos, action, "tails"))
            mover, a, b, c = 1 - mover, 0, c, b


def estimate(pair: PolicyPair, trials: int, seed: int,
             backend: str | None = None) -> TrialReport:
    """Monte-Carlo estimate of the first player's win probability."""
    if trials < 1:
        raise ValueError("need at least one trial")
    run = kernels.simulate_games(backend)
    wins = int(run(pair.n, policy_array(pair.n, pair.first),
                   policy_array(pair.n, pair.second), trials, seed, 0))
    p = wins / trials
    return TrialReport(n=pair.n, trials=trials, wins_first=wins, estimate=p,
                       std_error=sqrt(p * (1.0 - p) / trials), seed=seed)
