"""Exact solver and tools for the Risk-or-Safety coin game.

Two players race to bank n points.  A turn is a streak of coin tosses:
heads adds an open point, tails forfeits the streak and passes the turn,
and the mover may stop to bank the streak instead of tossing.  This
package computes the unique optimal strategy and the exact rational win
probabilities, serves them over a small HTTP API, and ships a seeded
Monte-Carlo simulator for validation.
"""

from .analytic import BudgetExceeded, StrategyAssignment, StrategyReport, solve_analytic
from .evaluation import action_values, evaluate_policy, one_step_violations, reachable_positions
from .exact_math import BigRational, LinearSystem, SingularSystem, solve_exact
from .game_core import (
    Action,
    DeadPosition,
    GameParams,
    IllegalAction,
    NeedsView,
    Outcome,
    Position,
    Transition,
    alive_positions,
    decision_positions,
    home_target,
    is_alive,
    needs_view,
    new_positions,
    position_for_needs,
    step,
)
from .interval import NotConverged, Solution, solve_iterative
from .policy_doc import (
    DocumentError,
    build_policy_document,
    canonical_json,
    load_policy_document,
    state_answer,
)
from .server import PolicyService, make_server
from .simulation import GameRecord, PolicyPair, TrialReport, estimate, exact_pair_value, play_game
from .strategy_analysis import (
    AllInReport,
    ThresholdTable,
    all_in_report,
    extract_thresholds,
    p_all,
    p_split,
)
from .verification import CheckResult, run_battery

__version__ = "0.1.0"

__all__ = [
    "Action",
    "AllInReport",
    "BigRational",
    "BudgetExceeded",
    "CheckResult",
    "DeadPosition",
    "DocumentError",
    "GameParams",
    "GameRecord",
    "IllegalAction",
    "LinearSystem",
    "NeedsView",
    "NotConverged",
    "Outcome",
    "PolicyPair",
    "PolicyService",
    "Position",
    "SingularSystem",
    "Solution",
    "StrategyAssignment",
    "StrategyReport",
    "ThresholdTable",
    "Transition",
    "TrialReport",
    "action_values",
    "alive_positions",
    "all_in_report",
    "build_policy_document",
    "canonical_json",
    "decision_positions",
    "estimate",
    "evaluate_policy",
    "exact_pair_value",
    "extract_thresholds",
    "home_target",
    "is_alive",
    "load_policy_document",
    "make_server",
    "needs_view",
    "new_positions",
    "one_step_violations",
    "p_all",
    "p_split",
    "play_game",
    "position_for_needs",
    "reachable_positions",
    "run_battery",
    "solve_analytic",
    "solve_exact",
    "solve_iterative",
    "state_answer",
    "step",
    "__version__",
]
