/** Presentation helpers.  Every digit shown comes straight out of a
 * StateAnswer or PolicyDocument field: fractions are echoed verbatim and
 * percentages are a fixed-point rendering of the served approx field.
 */

import { PastState } from "./session.js";
import { Action, FractionFields, StateAnswer } from "./types.js";

const ACTION_LABEL: Record<Action, string> = {
  stop: "Stop",
  continue: "Toss",
  toss: "Toss",
};

export function actionLabel(action: Action): string {
  return ACTION_LABEL[action];
}

export function formatFraction(f: FractionFields): string {
  return `${f.num}/${f.den}`;
}

export function formatPercent(f: FractionFields): string {
  return `${(f.approx * 100).toFixed(1)}%`;
}

function formatValue(f: FractionFields): string {
  return `${formatFraction(f)} ≈ ${formatPercent(f)}`;
}

/** One-line recommendation, e.g. "Toss — win probability 6/11 ≈ 54.5%". */
export function formatAnswerLine(answer: StateAnswer): string {
  return (
    `${actionLabel(answer.recommended)} — win probability ` +
    formatValue(answer.p_win)
  );
}

/** Full advisor card for one position. */
export function formatAnswerDetail(answer: StateAnswer): string {
  const lines = [
    `position (a=${answer.a}, b=${answer.b}, c=${answer.c}), target ${answer.n}`,
    formatAnswerLine(answer),
  ];
  if (answer.p_if_continue !== null) {
    lines.push(`if toss: ${formatValue(answer.p_if_continue)}`);
  }
  if (answer.p_if_stop !== null) {
    lines.push(`if stop: ${formatValue(answer.p_if_stop)}`);
  }
  if (answer.p_if_continue === null && answer.recommended === "toss") {
    lines.push("no decision here: with no open points the only move is to toss");
  }
  if (answer.tie) {
    lines.push("tie: both actions win equally often");
  }
  return lines.join("\n");
}

/** Side-by-side what-if comparison of two positions. */
export function formatComparison(
  left: StateAnswer,
  right: StateAnswer,
): string {
  const a = formatAnswerDetail(left).split("\n");
  const b = formatAnswerDetail(right).split("\n");
  const width = Math.max(...a.map((line) => line.length));
  const rows = Math.max(a.length, b.length);
  const out: string[] = [];
  for (let i = 0; i < rows; i += 1) {
    out.push(`${(a[i] ?? "").padEnd(width)} | ${b[i] ?? ""}`);
  }
  return out.join("\n");
}

/** Status panel text for the game board. */
export function formatBoard(state: PastState): string {
  const lines = [
    `target ${state.n}  (${state.mode}, rng ${state.rng_mode})`,
    `saved: human ${state.scores.human_saved}, ai ${state.scores.ai_saved}`,
    `open pile: ${state.open}`,
  ];
  if (state.winner !== null) {
    lines.push(`winner: ${state.winner}`);
  } else {
    lines.push(`turn: ${state.whose_turn}`);
  }
  return lines.join("\n");
}
