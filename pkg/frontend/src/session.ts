/** Pure game-session state machine.
 *
 * A session mirrors a legal game trajectory: open points belong to the
 * player whose turn it is, banked points are safe, heads adds a point,
 * tails wipes the open pile and passes the turn, banking moves the pile
 * to the mover's save box and passes the turn.  The mover wins the moment
 * saved + open reaches the target.
 *
 * Everything here is synchronous and immutable; asking the service what
 * the AI should do lives in the async drivers at the bottom.
 */

import { AnswerSource } from "./api.js";
import { Coin, coinStream } from "./rng.js";
import { AdvisorQuery, StateAnswer } from "./types.js";

export type Mode = "vs_ai" | "advisor";
export type RngMode = "auto" | "manual-entry";
export type Turn = "human" | "ai";

export type GameEvent =
  | { kind: "heads" }
  | { kind: "tails" }
  | { kind: "bank" };

export interface Scores {
  human_saved: number;
  ai_saved: number;
}

/** Everything the board renders; history snapshots store exactly this. */
export interface PastState {
  n: number;
  mode: Mode;
  scores: Scores;
  open: number;
  whose_turn: Turn;
  rng_mode: RngMode;
  seed: number;
  /** Coin draws consumed from the seeded stream (auto mode only). */
  flips: number;
  winner: Turn | null;
  transcript: readonly string[];
}

export interface HistoryStep {
  state: PastState;
  event: GameEvent;
}

export interface SessionState extends PastState {
  history: readonly HistoryStep[];
  /** Inline validation feedback from the last rejected event, if any. */
  message: string | null;
}

export interface SessionOptions {
  n: number;
  mode: Mode;
  rng_mode: RngMode;
  seed?: number;
}

export function newSession(opts: SessionOptions): SessionState {
  if (!Number.isInteger(opts.n) || opts.n < 2) {
    throw new Error(`target must be an integer >= 2, got ${opts.n}`);
  }
  const seed = (opts.seed ?? 0) >>> 0;
  const header =
    opts.rng_mode === "auto"
      ? `game n=${opts.n} ${opts.mode} rng=auto seed=${seed}`
      : `game n=${opts.n} ${opts.mode} rng=manual-entry`;
  return {
    n: opts.n,
    mode: opts.mode,
    scores: { human_saved: 0, ai_saved: 0 },
    open: 0,
    whose_turn: "human",
    rng_mode: opts.rng_mode,
    seed,
    flips: 0,
    winner: null,
    transcript: [header],
    history: [],
    message: null,
  };
}

export function snapshot(s: SessionState): PastState {
  return {
    n: s.n,
    mode: s.mode,
    scores: { ...s.scores },
    open: s.open,
    whose_turn: s.whose_turn,
    rng_mode: s.rng_mode,
    seed: s.seed,
    flips: s.flips,
    winner: s.winner,
    transcript: s.transcript,
  };
}

function rejected(s: SessionState, message: string): SessionState {
  return { ...s, message };
}

function other(turn: Turn): Turn {
  return turn === "human" ? "ai" : "human";
}

function savedOf(scores: Scores, turn: Turn): number {
  return turn === "human" ? scores.human_saved : scores.ai_saved;
}

function statusSuffix(scores: Scores, open: number): string {
  return `open=${open} human=${scores.human_saved} ai=${scores.ai_saved}`;
}

/** Apply one event for the current mover.
 *
 * Illegal events leave the game state untouched and surface an inline
 * validation message instead.
 */
export function playTurn(s: SessionState, event: GameEvent): SessionState {
  if (s.winner !== null) {
    return rejected(s, "the game is over; start a new one");
  }
  if (event.kind === "bank" && s.open < 1) {
    return rejected(s, "banking needs at least one open point");
  }

  const before = snapshot(s);
  const mover = s.whose_turn;
  const lines: string[] = [];
  let open = s.open;
  let winner: Turn | null = null;
  let scores = s.scores;
  let turn: Turn = mover;
  let flips = s.flips;

  if (event.kind === "heads" || event.kind === "tails") {
    if (s.rng_mode === "auto") flips += 1;
    if (event.kind === "heads") {
      open += 1;
      lines.push(`${mover}: toss heads -> ${statusSuffix(scores, open)}`);
      if (savedOf(scores, mover) + open >= s.n) {
        winner = mover;
        lines.push(`winner: ${mover}`);
      }
    } else {
      open = 0;
      turn = other(mover);
      lines.push(`${mover}: toss tails -> ${statusSuffix(scores, open)}`);
    }
  } else {
    scores =
      mover === "human"
        ? { ...scores, human_saved: scores.human_saved + open }
        : { ...scores, ai_saved: scores.ai_saved + open };
    open = 0;
    turn = other(mover);
    lines.push(`${mover}: bank -> ${statusSuffix(scores, open)}`);
    if (savedOf(scores, mover) >= s.n) {
      winner = mover;
      turn = mover;
      lines.push(`winner: ${mover}`);
    }
  }

  return {
    ...s,
    scores,
    open,
    whose_turn: winner === null ? turn : mover,
    flips,
    winner,
    transcript: [...s.transcript, ...lines],
    history: [...s.history, { state: before, event }],
    message: null,
  };
}

/** Rewind to the state stored at history[index]; index equal to the
 * history length is a no-op.  The returned session renders exactly as it
 * did then, and the steps cut off are handed back for redo.
 */
export function undoTo(
  s: SessionState,
  index: number,
): { session: SessionState; undone: HistoryStep[] } {
  if (!Number.isInteger(index) || index < 0 || index > s.history.length) {
    throw new Error(`history index ${index} out of range`);
  }
  if (index === s.history.length) {
    return { session: s, undone: [] };
  }
  const target = s.history[index]!.state;
  return {
    session: {
      ...target,
      scores: { ...target.scores },
      history: s.history.slice(0, index),
      message: null,
    },
    undone: s.history.slice(index),
  };
}

export function undo(s: SessionState): {
  session: SessionState;
  undone: HistoryStep[];
} {
  return undoTo(s, Math.max(0, s.history.length - 1));
}

/** Replay previously undone steps through the same pure transition. */
export function redo(s: SessionState, steps: HistoryStep[]): SessionState {
  let cur = s;
  for (const step of steps) {
    cur = playTurn(cur, step.event);
  }
  return cur;
}

/** Next coin the seeded stream will produce for this session. */
export function autoCoin(s: SessionState): Coin {
  return coinStream(s.seed).at(s.flips);
}

/** Position of the current mover in the service's (a, b, c) convention. */
export function moverQuery(s: SessionState): AdvisorQuery {
  return {
    n: s.n,
    a: s.open,
    b: savedOf(s.scores, s.whose_turn),
    c: savedOf(s.scores, other(s.whose_turn)),
  };
}

/** Bounds check mirroring the service's aliveness rule, run before any
 * advisor dispatch so obviously dead positions never leave the client.
 */
export function validateQuery(q: AdvisorQuery): string | null {
  for (const [label, value] of Object.entries(q)) {
    if (!Number.isInteger(value)) return `${label} must be an integer`;
  }
  if (q.n < 2) return "target n must be at least 2";
  if (q.a < 0 || q.b < 0 || q.c < 0) return "counts cannot be negative";
  if (q.a + q.b >= q.n) {
    return `open ${q.a} + saved ${q.b} reaches the target; the game is over`;
  }
  if (q.c >= q.n) {
    return `opponent saved ${q.c} reaches the target; the game is over`;
  }
  return null;
}

/** One AI half-step in vs_ai mode: ask the source what the optimal move
 * is, then play it.  A toss outcome comes from the seeded stream in auto
 * mode and must be supplied by the caller in manual-entry mode.
 */
export async function aiStep(
  s: SessionState,
  source: AnswerSource,
  enteredCoin?: Coin,
): Promise<{ session: SessionState; answer: StateAnswer }> {
  if (s.mode !== "vs_ai") throw new Error("aiStep only applies in vs_ai mode");
  if (s.whose_turn !== "ai" || s.winner !== null) {
    throw new Error("it is not the AI's turn");
  }
  const answer = await source.stateAnswer(moverQuery(s));
  if (answer.recommended === "stop") {
    return { session: playTurn(s, { kind: "bank" }), answer };
  }
  const coin = s.rng_mode === "auto" ? autoCoin(s) : enteredCoin;
  if (coin === undefined) {
    return {
      session: rejected(s, "enter the coin outcome for the AI's toss"),
      answer,
    };
  }
  return { session: playTurn(s, { kind: coin }), answer };
}

/** Run AI half-steps until the turn comes back or somebody wins.  Each
 * intermediate state is reported so the UI can animate toss by toss.
 * Only usable in auto rng mode; manual entry feeds aiStep one coin at a
 * time instead.
 */
export async function aiTurn(
  s: SessionState,
  source: AnswerSource,
  onStep?: (step: { session: SessionState; answer: StateAnswer }) => void,
): Promise<SessionState> {
  if (s.rng_mode !== "auto") {
    throw new Error("aiTurn needs auto rng mode");
  }
  let cur = s;
  while (cur.whose_turn === "ai" && cur.winner === null) {
    const step = await aiStep(cur, source);
    cur = step.session;
    if (onStep) onStep(step);
  }
  return cur;
}
