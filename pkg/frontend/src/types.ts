/** JSON shapes shared with the policy service, mirrored field for field. */

/** Exact rational as serialized by the service; approx is a convenience. */
export interface FractionFields {
  num: string;
  den: string;
  approx: number;
}

export type Action = "continue" | "stop" | "toss";

export interface PolicyRow {
  a: number;
  b: number;
  c: number;
  action: Action;
  p: FractionFields;
  tie: boolean;
}

export interface PolicyDocument {
  version: number;
  n: number;
  p_first: FractionFields;
  positions: PolicyRow[];
  thresholds: number[][];
}

export interface StateAnswer {
  n: number;
  a: number;
  b: number;
  c: number;
  p_win: FractionFields;
  legal_actions: Action[];
  recommended: Action;
  p_if_continue: FractionFields | null;
  p_if_stop: FractionFields | null;
  tie: boolean;
}

/** Position query as entered in the advisor what-if panel. */
export interface AdvisorQuery {
  n: number;
  a: number;
  b: number;
  c: number;
}

function isFraction(x: unknown): x is FractionFields {
  if (typeof x !== "object" || x === null) return false;
  const f = x as Record<string, unknown>;
  return (
    typeof f.num === "string" &&
    typeof f.den === "string" &&
    typeof f.approx === "number" &&
    /^-?[0-9]+$/.test(f.num) &&
    /^[0-9]+$/.test(f.den)
  );
}

function isAction(x: unknown): x is Action {
  return x === "continue" || x === "stop" || x === "toss";
}

export function isStateAnswer(x: unknown): x is StateAnswer {
  if (typeof x !== "object" || x === null) return false;
  const a = x as Record<string, unknown>;
  return (
    typeof a.n === "number" &&
    typeof a.a === "number" &&
    typeof a.b === "number" &&
    typeof a.c === "number" &&
    isFraction(a.p_win) &&
    Array.isArray(a.legal_actions) &&
    a.legal_actions.every(isAction) &&
    isAction(a.recommended) &&
    (a.p_if_continue === null || isFraction(a.p_if_continue)) &&
    (a.p_if_stop === null || isFraction(a.p_if_stop)) &&
    typeof a.tie === "boolean"
  );
}

export function isPolicyDocument(x: unknown): x is PolicyDocument {
  if (typeof x !== "object" || x === null) return false;
  const d = x as Record<string, unknown>;
  if (d.version !== 1) return false;
  if (typeof d.n !== "number" || d.n < 2) return false;
  if (!isFraction(d.p_first)) return false;
  if (!Array.isArray(d.positions) || d.positions.length === 0) return false;
  for (const row of d.positions) {
    if (typeof row !== "object" || row === null) return false;
    const r = row as Record<string, unknown>;
    const ok =
      typeof r.a === "number" &&
      typeof r.b === "number" &&
      typeof r.c === "number" &&
      isAction(r.action) &&
      isFraction(r.p) &&
      typeof r.tie === "boolean";
    if (!ok) return false;
  }
  if (!Array.isArray(d.thresholds)) return false;
  return d.thresholds.every(
    (row) => Array.isArray(row) && row.every((t) => typeof t === "number"),
  );
}

/** Parse and validate a policy document; throws on anything malformed. */
export function parsePolicyDocument(text: string): PolicyDocument {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch {
    throw new Error("not valid JSON");
  }
  if (!isPolicyDocument(data)) {
    throw new Error("not a recognizable policy document");
  }
  return data;
}
