"""Rules and state space of the risk-or-safety coin game.

Two players race to bank n points. The mover repeatedly tosses a fair coin:
heads adds one open point, tails forfeits the open points and passes the turn.
Before any toss with at least one open point the mover may instead stop,
banking the open points and passing the turn. First player to reach n banked
plus open points (or n banked, via stop) wins.

A position is written from the mover's perspective as (a, b, c): a open
points, b banked by the mover, c banked by the opponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class Action(Enum):
    CONTINUE = "continue"
    STOP = "stop"


class Outcome(Enum):
    HEADS = "heads"
    TAILS = "tails"
    BANKED = "banked"


class Position(NamedTuple):
    a: int
    b: int
    c: int


class NeedsView(NamedTuple):
    """Target-independent view of a position: open points and points-to-go.

    r = n - b is what the mover still needs, s = n - c what the opponent
    still needs. Positions with equal needs views play identically for any
    target.
    """

    a: int
    r: int
    s: int


@dataclass(frozen=True)
class GameParams:
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"target must be at least 1, got {self.n}")


@dataclass(frozen=True)
class Transition:
    outcome: Outcome
    next_position: Position | None
    perspective_flipped: bool
    mover_wins: bool


class IllegalAction(Exception):
    """Stop chosen with no open points."""


class DeadPosition(Exception):
    """Position is not reachable in a live game (someone already won)."""


def is_alive(pos: Position, params: GameParams) -> bool:
    a, b, c = pos
    n = params.n
    return a >= 0 and b >= 0 and c >= 0 and a + b < n and c < n


def step(pos: Position, action: Action, params: GameParams,
         outcome: Outcome | None = None) -> Transition:
    """Apply one move. Continue requires an outcome (HEADS or TAILS).

    Stop with a + b = n is a degenerate but total case: the mover banks and
    wins immediately. Anything past the target is dead.
    """
    a, b, c = pos
    n = params.n
    if a < 0 or b < 0 or c < 0 or a + b > n or c >= n:
        raise DeadPosition(f"{pos} is not alive for target {n}")
    if action is Action.STOP:
        if outcome not in (None, Outcome.BANKED):
            raise ValueError("stop cannot carry a coin outcome")
        if a == 0:
            raise IllegalAction("cannot stop with no open points")
        if a + b == n:
            return Transition(Outcome.BANKED, None, False, True)
        return Transition(Outcome.BANKED, Position(0, c, a + b), True, False)
    if a + b == n:
        raise DeadPosition(f"{pos} already holds the target {n}")
    if outcome is Outcome.HEADS:
        if a + 1 + b == n:
            return Transition(Outcome.HEADS, None, False, True)
        return Transition(Outcome.HEADS, Position(a + 1, b, c), False, False)
    if outcome is Outcome.TAILS:
        return Transition(Outcome.TAILS, Position(0, c, b), True, False)
    raise ValueError("continue requires outcome HEADS or TAILS")


def alive_positions(params: GameParams) -> list[Position]:
    """All n^2(n+1)/2 alive positions, ordered lexicographically by (b, c, a)."""
    n = params.n
    return [Position(a, b, c)
            for b in range(n)
            for c in range(n)
            for a in range(n - b)]


def new_positions(params: GameParams) -> list[Position]:
    """Alive positions with b = 0 or c = 0: the ones no smaller target covers.

    There are (3n^2 - n)/2 of them; ordered lexicographically by (b, c, a).
    """
    return [p for p in alive_positions(params) if p.b == 0 or p.c == 0]


def decision_positions(params: GameParams) -> list[Position]:
    """Alive positions where stop is legal (a >= 1): (n-1)n^2/2 in total.

    Ordered by descending a + b, then descending a, then ascending c. This is
    the sweep order interval iteration uses: positions closest to the target
    first.
    """
    n = params.n
    out = [Position(a, b, c)
           for b in range(n)
           for c in range(n)
           for a in range(1, n - b)]
    out.sort(key=lambda p: (-(p.a + p.b), -p.a, p.c))
    return out


def needs_view(pos: Position, params: GameParams) -> NeedsView:
    if not is_alive(pos, params):
        raise DeadPosition(f"{pos} is not alive for target {params.n}")
    return NeedsView(pos.a, params.n - pos.b, params.n - pos.c)


def position_for_needs(view: NeedsView, params: GameParams) -> Position:
    """Inverse of needs_view at a given target."""
    n = params.n
    pos = Position(view.a, n - view.r, n - view.s)
    if pos.b < 0 or pos.c < 0 or not is_alive(pos, params):
        raise DeadPosition(f"{view} does not fit target {n}")
    return pos


def home_target(view: NeedsView) -> tuple[int, Position]:
    """Smallest target where this needs view occurs, and the position there.

    At that target the position has b = 0 or c = 0, i.e. it is a new position.
    """
    m = max(view.r, view.s)
    return m, Position(view.a, m - view.r, m - view.s)
