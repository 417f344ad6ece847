/** Browser wiring: holds the current session, forwards button presses to
 * the pure state machine, and paints whatever it returns.  All probability
 * lookups go through one AnswerSource chosen at startup.
 */

import {
  AnswerSource,
  DeadPositionError,
  DocumentAnswerSource,
  FallbackAnswerSource,
  HttpAnswerSource,
} from "./api.js";
import {
  formatAnswerDetail,
  formatBoard,
  formatComparison,
} from "./render.js";
import {
  GameEvent,
  HistoryStep,
  SessionState,
  aiTurn,
  autoCoin,
  newSession,
  playTurn,
  undo,
  redo,
  validateQuery,
} from "./session.js";
import { AdvisorQuery, parsePolicyDocument } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
};

let session: SessionState | null = null;
let redoStack: HistoryStep[] = [];
let loadedDocument: DocumentAnswerSource | null = null;
let busy = false;

function source(): AnswerSource {
  return new FallbackAnswerSource(
    new HttpAnswerSource(window.location.origin),
    loadedDocument,
  );
}

function paint(): void {
  const board = $("board");
  const transcript = $("transcript");
  const status = $("status");
  if (session === null) {
    board.textContent = "no game in progress";
    transcript.textContent = "";
  } else {
    board.textContent = formatBoard(session);
    transcript.textContent = session.transcript.join("\n");
    status.textContent = session.message ?? "";
  }
  const manual = session !== null && session.rng_mode === "manual-entry";
  $<HTMLButtonElement>("btn-toss").hidden = manual;
  $<HTMLButtonElement>("btn-heads").hidden = !manual;
  $<HTMLButtonElement>("btn-tails").hidden = !manual;
}

function setStatus(text: string): void {
  $("status").textContent = text;
}

/** Apply one human event, then let the AI answer if it is now its move. */
async function submit(event: GameEvent): Promise<void> {
  if (session === null || busy) return;
  if (session.mode === "vs_ai" && session.whose_turn === "ai") {
    setStatus("it is the AI's turn");
    return;
  }
  redoStack = [];
  session = playTurn(session, event);
  paint();
  if (
    session.mode === "vs_ai" &&
    session.whose_turn === "ai" &&
    session.winner === null &&
    session.rng_mode === "auto"
  ) {
    busy = true;
    try {
      session = await aiTurn(session, source(), (step) => {
        session = step.session;
        paint();
      });
    } catch (err) {
      setStatus(`AI move failed: ${(err as Error).message}`);
    } finally {
      busy = false;
    }
    paint();
  }
}

function startGame(): void {
  const n = Number($<HTMLInputElement>("new-n").value);
  const mode = $<HTMLSelectElement>("new-mode").value === "advisor"
    ? "advisor"
    : "vs_ai";
  const rng = $<HTMLSelectElement>("new-rng").value === "manual-entry"
    ? "manual-entry"
    : "auto";
  const seed = Number($<HTMLInputElement>("new-seed").value) || 0;
  try {
    session = newSession({ n, mode, rng_mode: rng, seed });
  } catch (err) {
    setStatus((err as Error).message);
    return;
  }
  redoStack = [];
  paint();
}

function readQuery(prefix: string): AdvisorQuery {
  const num = (id: string) => Number($<HTMLInputElement>(id).value);
  return {
    n: num(`${prefix}-n`),
    a: num(`${prefix}-a`),
    b: num(`${prefix}-b`),
    c: num(`${prefix}-c`),
  };
}

async function lookup(query: AdvisorQuery): Promise<string> {
  const invalid = validateQuery(query);
  if (invalid !== null) return invalid;
  try {
    const answer = await source().stateAnswer(query);
    return formatAnswerDetail(answer);
  } catch (err) {
    if (err instanceof DeadPositionError) {
      return `dead position: ${err.message}`;
    }
    return `lookup failed: ${(err as Error).message}`;
  }
}

async function advisorLookup(): Promise<void> {
  $("advice").textContent = await lookup(readQuery("q"));
}

async function whatIf(): Promise<void> {
  const left = readQuery("q");
  const right = readQuery("w");
  const invalid = validateQuery(left) ?? validateQuery(right);
  if (invalid !== null) {
    $("advice").textContent = invalid;
    return;
  }
  try {
    const src = source();
    const [a, b] = await Promise.all([
      src.stateAnswer(left),
      src.stateAnswer(right),
    ]);
    $("advice").textContent = formatComparison(a, b);
  } catch (err) {
    $("advice").textContent =
      err instanceof DeadPositionError
        ? `dead position: ${err.message}`
        : `lookup failed: ${(err as Error).message}`;
  }
}

async function loadPolicyFile(file: File): Promise<void> {
  try {
    const doc = parsePolicyDocument(await file.text());
    loadedDocument = new DocumentAnswerSource(doc);
    setStatus(`loaded ${loadedDocument.describe()} as offline fallback`);
  } catch (err) {
    setStatus(`could not load policy file: ${(err as Error).message}`);
  }
}

export function wire(): void {
  $("btn-new").addEventListener("click", startGame);
  $("btn-toss").addEventListener("click", () => {
    if (session !== null) void submit({ kind: autoCoin(session) });
  });
  $("btn-heads").addEventListener("click", () => void submit({ kind: "heads" }));
  $("btn-tails").addEventListener("click", () => void submit({ kind: "tails" }));
  $("btn-bank").addEventListener("click", () => void submit({ kind: "bank" }));
  $("btn-undo").addEventListener("click", () => {
    if (session === null) return;
    const { session: prev, undone } = undo(session);
    session = prev;
    redoStack = [...undone, ...redoStack];
    paint();
  });
  $("btn-redo").addEventListener("click", () => {
    if (session === null || redoStack.length === 0) return;
    const [step, ...rest] = redoStack;
    session = redo(session, [step!]);
    redoStack = rest;
    paint();
  });
  $("btn-lookup").addEventListener("click", () => void advisorLookup());
  $("btn-whatif").addEventListener("click", () => void whatIf());
  $<HTMLInputElement>("policy-file").addEventListener("change", (ev) => {
    const file = (ev.target as HTMLInputElement).files?.[0];
    if (file) void loadPolicyFile(file);
  });
  paint();
}

if (typeof document !== "undefined" && document.getElementById("board")) {
  wire();
}
