/** Shared fixtures and drivers for the test suite.
 *
 * The JSON files under fixtures/ are verbatim HTTP responses captured from
 * the policy service (see scripts/capture_fixtures.py), so comparing
 * against them is comparing against the service itself.
 */

import { readFileSync } from "node:fs";

import { AnswerSource, HttpAnswerSource } from "../src/api.js";
import {
  SessionState,
  aiTurn,
  autoCoin,
  moverQuery,
  newSession,
  playTurn,
} from "../src/session.js";
import { PolicyDocument, StateAnswer } from "../src/types.js";

export function fixtureText(name: string): string {
  return readFileSync(new URL(`../fixtures/${name}`, import.meta.url), "utf8");
}

export function policyFixture(n: number): PolicyDocument {
  return JSON.parse(fixtureText(`policy_n${n}.json`)) as PolicyDocument;
}

/** Captured service answers keyed "a,b,c". */
export function answerFixture(n: number): Record<string, StateAnswer> {
  return JSON.parse(fixtureText(`answers_n${n}.json`)) as Record<
    string,
    StateAnswer
  >;
}

export function answerAt(
  n: number,
  a: number,
  b: number,
  c: number,
): StateAnswer {
  const answer = answerFixture(n)[`${a},${b},${c}`];
  if (answer === undefined) {
    throw new Error(`no captured answer for (${a},${b},${c}) at n=${n}`);
  }
  return answer;
}

/** HttpAnswerSource wired to a fake fetch that replays captured service
 * responses, including its 404 behavior for dead positions.
 */
export function stubbedHttpSource(targets: number[]): HttpAnswerSource {
  const tables = new Map(targets.map((n) => [n, answerFixture(n)]));
  const fakeFetch = async (url: string): Promise<Response> => {
    const parsed = new URL(url);
    if (parsed.pathname !== "/api/v1/state") {
      return new Response(JSON.stringify({ error: "no such endpoint" }), {
        status: 404,
      });
    }
    const q = parsed.searchParams;
    const n = Number(q.get("n"));
    const key = `${q.get("a")},${q.get("b")},${q.get("c")}`;
    const answer = tables.get(n)?.[key];
    if (answer === undefined) {
      return new Response(
        JSON.stringify({ error: `position ${key} is not alive for n=${n}` }),
        { status: 404 },
      );
    }
    return new Response(JSON.stringify(answer), { status: 200 });
  };
  return new HttpAnswerSource("http://service.test", fakeFetch);
}

/** Play a full vs_ai game where the human follows the advisor's
 * recommendation as well, so the whole game is a function of (n, seed)
 * and the served policy.
 */
export async function scriptedGame(
  n: number,
  seed: number,
  source: AnswerSource,
): Promise<SessionState> {
  let s = newSession({ n, mode: "vs_ai", rng_mode: "auto", seed });
  while (s.winner === null) {
    if (s.whose_turn === "human") {
      const answer = await source.stateAnswer(moverQuery(s));
      s =
        answer.recommended === "stop"
          ? playTurn(s, { kind: "bank" })
          : playTurn(s, { kind: autoCoin(s) });
    } else {
      s = await aiTurn(s, source);
    }
  }
  return s;
}
