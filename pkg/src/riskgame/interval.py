"""Interval value iteration with an exact rational finish.

Every decision cell carries a lower and upper bound on its win probability
plus a decision label. Sweeps tighten bounds in place (Gauss-Seidel style,
positions nearest the target first) and fix a cell's action the moment its
two action-value intervals separate; decided cells keep tightening with
their chosen action's bounds only. Float bounds never certify the final
answer: once labels settle, the policy is re-solved and re-verified exactly
over rationals, and any cell the float phase got wrong or left open (exact
ties never separate) is corrected there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .evaluation import evaluate_policy, one_step_violations
from .game_core import Action, GameParams, Position, decision_positions

# Bounds this close together cannot separate in float64; treat the cell as a
# tie suspect and let the exact phase decide it.
TIE_GAP = 1e-9

_ACTION_OF_LABEL = {kernels.CONTINUE: Action.CONTINUE, kernels.STOP: Action.STOP}


class NotConverged(Exception):
    """Sweep budget exhausted with cells still undecided and gaps wide."""

    def __init__(self, message: str,
                 cells: list[tuple[Position, float, float]]):
        super().__init__(message)
        self.cells = cells


@dataclass(frozen=True)
class IntervalCell:
    p_min: float
    p_max: float
    action: Action | None


@dataclass
class Solution:
    """Optimal play for one target: exact values, policy, and tie flags."""

    n: int
    policy: dict[Position, Action]
    values: dict[Position, Fraction]
    p_first: Fraction
    ties: frozenset[Position]
    method: str
    sweeps: int | None


@dataclass
class IterationState:
    params: GameParams
    epsilon: float
    backend: str
    cells: list[Position]
    index: dict[Position, int]
    pmin: np.ndarray
    pmax: np.ndarray
    labels: np.ndarray
    i_cb: np.ndarray
    i_bc: np.ndarray
    i_up: np.ndarray
    i_cab: np.ndarray
    i_abc: np.ndarray
    sweeps: int = 0
    undecided: int = field(default=0)

    def cell(self, pos: Position) -> IntervalCell:
        i = self.index[pos]
        return IntervalCell(float(self.pmin[i]), float(self.pmax[i]),
                            _ACTION_OF_LABEL.get(int(self.labels[i])))

    def undecided_cells(self) -> list[tuple[Position, float, float]]:
        return [(pos, float(self.pmin[i]), float(self.pmax[i]))
                for i, pos in enumerate(self.cells)
                if self.labels[i] == kernels.UNKNOWN]

    def widest_undecided_gap(self) -> float:
        mask = self.labels == kernels.UNKNOWN
        if not mask.any():
            return 0.0
        m = len(self.cells)
        return float((self.pmax[:m] - self.pmin[:m])[mask].max())


def init_state(params: GameParams, epsilon: float = 1e-12,
               backend: str | None = None) -> IterationState:
    n = params.n
    cells = decision_positions(params)
    m = len(cells)
    index = {pos: i for i, pos in enumerate(cells)}
    sentinel = m  # extra slot holding the boundary value 1.0

    def ref(a: int, b: int, c: int) -> int:
        if a + b >= n:
            return sentinel
        return index[Position(a, b, c)]

    refs = {name: np.empty(m, dtype=np.int64)
            for name in ("i_cb", "i_bc", "i_up", "i_cab", "i_abc")}
    for i, (a, b, c) in enumerate(cells):
        refs["i_cb"][i] = ref(1, c, b)
        refs["i_bc"][i] = ref(1, b, c)
        refs["i_up"][i] = ref(a + 1, b, c)
        refs["i_cab"][i] = ref(1, c, a + b)
        refs["i_abc"][i] = ref(1, a + b, c)

    pmin = np.zeros(m + 1, dtype=np.float64)
    pmax = np.ones(m + 1, dtype=np.float64)
    pmin[sentinel] = 1.0
    labels = np.zeros(m, dtype=np.int8)
    return IterationState(params=params, epsilon=epsilon,
                          backend=kernels.backend_name(backend),
                          cells=cells, index=index, pmin=pmin, pmax=pmax,
                          labels=labels, undecided=m, **refs)


def sweep(state: IterationState) -> IterationState:
    """One full pass; tightens bounds and labels in place."""
    pass_fn = kernels.sweep_pass(state.backend)
    state.undecided = int(pass_fn(
        state.pmin, state.pmax, state.labels,
        state.i_cb, state.i_bc, state.i_up, state.i_cab, state.i_abc,
        state.epsilon))
    state.sweeps += 1
    return state


def run_sweeps(params: GameParams, epsilon: float = 1e-12,
               max_sweeps: int = 10000,
               backend: str | None = None) -> IterationState:
    """Sweep until all cells decide, or only tie-narrow gaps remain."""
    state = init_state(params, epsilon, backend)
    while state.undecided:
        if state.sweeps >= max_sweeps:
            cells = state.undecided_cells()
            worst = ", ".join(f"{tuple(p)}:[{lo:.12f},{hi:.12f}]"
                              for p, lo, hi in cells[:5])
            raise NotConverged(
                f"{len(cells)} cells undecided after {state.sweeps} sweeps "
                f"for target {params.n} (widest gap "
                f"{state.widest_undecided_gap():.3e}): {worst}", cells)
        sweep(state)
        if state.undecided and state.widest_undecided_gap() < TIE_GAP:
            break  # candidate exact ties; the exact phase settles them
    return state


def _exact_finish(params: GameParams, policy: dict[Position, Action],
                  method: str, sweeps: int | None) -> Solution:
    """Exact solve of the labeled policy, then policy improvement to a fixed
    point. Each improvement round is a full exact re-solve, so the returned
    policy is certified one-step optimal; exact ties are labeled Stop."""
    values = evaluate_policy(params, policy)
    for _ in range(64):
        violations, ties = one_step_violations(params, policy, values)
        if not violations:
            break
        for pos, better in violations:
            policy[pos] = better
        values = evaluate_policy(params, policy)
    else:
        raise RuntimeError("exact policy improvement did not settle")
    for pos in ties:
        policy[pos] = Action.STOP
    return Solution(n=params.n, policy=policy, values=values,
                    p_first=values[Position(0, 0, 0)],
                    ties=frozenset(ties), method=method, sweeps=sweeps)


def solve_iterative(params: GameParams, epsilon: float = 1e-12,
                    max_sweeps: int = 10000,
                    backend: str | None = None) -> Solution:
    """Optimal solution for one target via sweeps plus exact verification."""
    state = run_sweeps(params, epsilon, max_sweeps, backend)
    policy = {}
    for i, pos in enumerate(state.cells):
        label = int(state.labels[i])
        # undecided survivors are tie suspects; ties resolve to Stop
        policy[pos] = _ACTION_OF_LABEL.get(label, Action.STOP)
    return _exact_finish(params, policy, "iterative", state.sweeps)
