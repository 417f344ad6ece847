"""Policy documents and state answers, serialized canonically.

A policy document is the complete playing aid for one target: the optimal
action and exact win probability for every alive position, plus the
threshold grid. Serialization is canonical JSON (sorted keys, two-space
indent, UTF-8, trailing newline), so re-solving by any method reproduces the
bytes exactly. Fractions travel as decimal strings to survive any JSON
parser's number handling untouched.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .evaluation import action_values
from .game_core import (
    Action,
    DeadPosition,
    GameParams,
    Position,
    alive_positions,
    is_alive,
)
from .interval import Solution
from .strategy_analysis import ThresholdTable, extract_thresholds

DOCUMENT_VERSION = 1


class DocumentError(ValueError):
    """Document fails validation (shape, coverage, or consistency)."""


def fraction_fields(value: Fraction) -> dict[str, Any]:
    return {"num": str(value.numerator), "den": str(value.denominator),
            "approx": float(value)}


def _parse_fraction(fields: Any, where: str) -> Fraction:
    try:
        num = int(fields["num"])
        den = int(fields["den"])
    except (TypeError, KeyError, ValueError) as exc:
        raise DocumentError(f"{where}: bad fraction fields") from exc
    if den <= 0:
        raise DocumentError(f"{where}: nonpositive denominator")
    return Fraction(num, den)


def build_policy_document(solution: Solution,
                          table: ThresholdTable | None = None) -> dict:
    """Complete JSON-ready description of optimal play for one target."""
    if table is None:
        table = extract_thresholds(solution)
    params = GameParams(solution.n)
    positions = []
    for pos in alive_positions(params):
        if pos.a == 0:
            action = "toss"  # no choice before the first open point
        else:
            action = solution.policy[pos].value
        positions.append({
            "a": pos.a, "b": pos.b, "c": pos.c,
            "action": action,
            "p": fraction_fields(solution.values[pos]),
            "tie": pos in solution.ties,
        })
    return {
        "version": DOCUMENT_VERSION,
        "n": solution.n,
        "p_first": fraction_fields(solution.p_first),
        "positions": positions,
        "thresholds": table.rows(),
    }


def canonical_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def solution_from_document(doc: Any) -> Solution:
    """Validate a parsed document and rebuild the Solution it describes."""
    if not isinstance(doc, dict):
        raise DocumentError("document is not an object")
    if doc.get("version") != DOCUMENT_VERSION:
        raise DocumentError(f"unsupported document version "
                            f"{doc.get('version')!r}")
    n = doc.get("n")
    if not isinstance(n, int) or n < 1:
        raise DocumentError(f"bad target {n!r}")
    params = GameParams(n)
    expected = alive_positions(params)
    rows = doc.get("positions")
    if not isinstance(rows, list) or len(rows) != len(expected):
        raise DocumentError(f"expected {len(expected)} positions, got "
                            f"{len(rows) if isinstance(rows, list) else rows!r}")
    values: dict[Position, Fraction] = {}
    policy: dict[Position, Action] = {}
    ties: set[Position] = set()
    for row in rows:
        try:
            pos = Position(row["a"], row["b"], row["c"])
            action = row["action"]
        except (TypeError, KeyError) as exc:
            raise DocumentError("malformed position row") from exc
        values[pos] = _parse_fraction(row.get("p"), f"position {tuple(pos)}")
        if pos.a == 0:
            if action != "toss":
                raise DocumentError(f"{tuple(pos)}: forced toss misnamed "
                                    f"{action!r}")
        else:
            if action not in ("continue", "stop"):
                raise DocumentError(f"{tuple(pos)}: unknown action {action!r}")
            policy[pos] = Action(action)
        if row.get("tie"):
            ties.add(pos)
    if set(values) != set(expected):
        raise DocumentError("positions do not cover the alive set")
    p_first = _parse_fraction(doc.get("p_first"), "p_first")
    if p_first != values[Position(0, 0, 0)]:
        raise DocumentError("p_first disagrees with the opening position")
    thresholds = doc.get("thresholds")
    if (not isinstance(thresholds, list) or len(thresholds) != n - 1
            or any(not isinstance(r, list) or len(r) != n - 1
                   for r in thresholds)):
        raise DocumentError("thresholds grid must be (n-1) x (n-1)")
    return Solution(n=n, policy=policy, values=values, p_first=p_first,
                    ties=frozenset(ties), method="document", sweeps=None)


def load_policy_document(text: str) -> Solution:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    return solution_from_document(doc)


def state_answer(solution: Solution, a: int, b: int, c: int) -> dict:
    """What should the mover at (a, b, c) do, and what is it worth."""
    params = GameParams(solution.n)
    pos = Position(a, b, c)
    if not is_alive(pos, params):
        raise DeadPosition(f"{tuple(pos)} is not alive for target "
                           f"{solution.n}")
    answer: dict[str, Any] = {
        "n": solution.n, "a": a, "b": b, "c": c,
        "p_win": fraction_fields(solution.values[pos]),
    }
    if a == 0:
        answer["legal_actions"] = ["toss"]
        answer["recommended"] = "toss"
        answer["p_if_continue"] = None
        answer["p_if_stop"] = None
        answer["tie"] = False
        return answer
    cont, stop = action_values(pos, params, solution.values)
    answer["legal_actions"] = ["continue", "stop"]
    answer["recommended"] = solution.policy[pos].value
    answer["p_if_continue"] = fraction_fields(cont)
    answer["p_if_stop"] = fraction_fields(stop)
    answer["tie"] = pos in solution.ties
    return answer
