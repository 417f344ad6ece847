/** Data layer: every state answer comes from the HTTP service or from a
 * loaded policy document.  Nothing in the UI computes probabilities; this
 * module is the only place answers enter from.
 */

import {
  AdvisorQuery,
  PolicyDocument,
  PolicyRow,
  StateAnswer,
  isStateAnswer,
} from "./types.js";

/** The queried position is not alive for the given target. */
export class DeadPositionError extends Error {}

/** The HTTP service could not be reached at all. */
export class ServiceUnreachableError extends Error {}

export interface AnswerSource {
  /** Short human label for the status line. */
  describe(): string;
  stateAnswer(query: AdvisorQuery): Promise<StateAnswer>;
}

type FetchLike = (url: string) => Promise<Response>;

export class HttpAnswerSource implements AnswerSource {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url) => fetch(url),
  ) {}

  describe(): string {
    return `service at ${this.baseUrl}`;
  }

  async stateAnswer(query: AdvisorQuery): Promise<StateAnswer> {
    const url =
      `${this.baseUrl}/api/v1/state?n=${query.n}&a=${query.a}` +
      `&b=${query.b}&c=${query.c}`;
    let resp: Response;
    try {
      resp = await this.fetchImpl(url);
    } catch {
      throw new ServiceUnreachableError(`no response from ${this.baseUrl}`);
    }
    const text = await resp.text();
    if (resp.status === 404) {
      throw new DeadPositionError(errorMessage(text));
    }
    if (!resp.ok) {
      throw new Error(`service returned ${resp.status}: ${errorMessage(text)}`);
    }
    const data: unknown = JSON.parse(text);
    if (!isStateAnswer(data)) {
      throw new Error("service returned an unrecognizable state answer");
    }
    return data;
  }
}

function errorMessage(body: string): string {
  try {
    const data = JSON.parse(body) as { error?: unknown };
    if (typeof data.error === "string") return data.error;
  } catch {
    /* fall through to the raw body */
  }
  return body;
}

/** Serves answers out of a policy document loaded from a file.
 *
 * The document stores one action and one value per position, so answers
 * built here carry null for the per-action values; the what-if panel
 * degrades accordingly rather than deriving numbers locally.
 */
export class DocumentAnswerSource implements AnswerSource {
  private readonly rows = new Map<string, PolicyRow>();

  constructor(private readonly doc: PolicyDocument) {
    for (const row of doc.positions) {
      this.rows.set(`${row.a},${row.b},${row.c}`, row);
    }
  }

  describe(): string {
    return `loaded policy document (n=${this.doc.n})`;
  }

  stateAnswer(query: AdvisorQuery): Promise<StateAnswer> {
    if (query.n !== this.doc.n) {
      return Promise.reject(
        new DeadPositionError(
          `loaded document covers target ${this.doc.n}, not ${query.n}`,
        ),
      );
    }
    const row = this.rows.get(`${query.a},${query.b},${query.c}`);
    if (row === undefined) {
      return Promise.reject(
        new DeadPositionError(
          `(${query.a}, ${query.b}, ${query.c}) is not alive for target ` +
            `${query.n}`,
        ),
      );
    }
    return Promise.resolve({
      n: this.doc.n,
      a: row.a,
      b: row.b,
      c: row.c,
      p_win: row.p,
      legal_actions: row.a === 0 ? ["toss"] : ["continue", "stop"],
      recommended: row.action,
      p_if_continue: null,
      p_if_stop: null,
      tie: row.tie,
    });
  }
}

/** Tries the service first and falls back to a loaded document only when
 * the service is unreachable.  Dead positions and malformed answers are
 * real errors and propagate unchanged.
 */
export class FallbackAnswerSource implements AnswerSource {
  constructor(
    private readonly primary: AnswerSource,
    private readonly fallback: AnswerSource | null,
  ) {}

  describe(): string {
    const tail = this.fallback ? `, falling back to ${this.fallback.describe()}` : "";
    return `${this.primary.describe()}${tail}`;
  }

  async stateAnswer(query: AdvisorQuery): Promise<StateAnswer> {
    try {
      return await this.primary.stateAnswer(query);
    } catch (err) {
      if (err instanceof ServiceUnreachableError && this.fallback) {
        return this.fallback.stateAnswer(query);
      }
      throw err;
    }
  }
}

/** Test seam: records every answer handed to the rest of the app so a
 * component test can assert that displayed numbers trace back to fields
 * served by the data layer.
 */
export class RecordingAnswerSource implements AnswerSource {
  readonly served: StateAnswer[] = [];

  constructor(private readonly inner: AnswerSource) {}

  describe(): string {
    return this.inner.describe();
  }

  async stateAnswer(query: AdvisorQuery): Promise<StateAnswer> {
    const answer = await this.inner.stateAnswer(query);
    this.served.push(answer);
    return answer;
  }
}
