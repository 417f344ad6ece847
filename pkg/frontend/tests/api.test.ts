import { describe, expect, it } from "vitest";

import {
  AnswerSource,
  DeadPositionError,
  DocumentAnswerSource,
  FallbackAnswerSource,
  HttpAnswerSource,
  RecordingAnswerSource,
  ServiceUnreachableError,
} from "../src/api.js";
import { answerAt, answerFixture, policyFixture, stubbedHttpSource } from "./helpers.js";

describe("HttpAnswerSource", () => {
  it("returns the service answer verbatim", async () => {
    const source = stubbedHttpSource([2, 3, 4]);
    const answer = await source.stateAnswer({ n: 3, a: 1, b: 0, c: 0 });
    expect(answer).toEqual(answerAt(3, 1, 0, 0));
  });

  it("maps 404 responses to DeadPositionError with the server text", async () => {
    const source = stubbedHttpSource([3]);
    await expect(
      source.stateAnswer({ n: 3, a: 2, b: 1, c: 0 }),
    ).rejects.toThrow(DeadPositionError);
    await expect(
      source.stateAnswer({ n: 3, a: 2, b: 1, c: 0 }),
    ).rejects.toThrow("not alive");
  });

  it("maps fetch failures to ServiceUnreachableError", async () => {
    const source = new HttpAnswerSource("http://down.test", async () => {
      throw new TypeError("connection refused");
    });
    await expect(
      source.stateAnswer({ n: 3, a: 0, b: 0, c: 0 }),
    ).rejects.toThrow(ServiceUnreachableError);
  });

  it("rejects malformed bodies without inventing an answer", async () => {
    const source = new HttpAnswerSource(
      "http://weird.test",
      async () => new Response('{"n": 3}', { status: 200 }),
    );
    await expect(
      source.stateAnswer({ n: 3, a: 0, b: 0, c: 0 }),
    ).rejects.toThrow("unrecognizable state answer");
  });
});

describe("DocumentAnswerSource", () => {
  it("serves each document row unchanged", async () => {
    const doc = policyFixture(3);
    const source = new DocumentAnswerSource(doc);
    for (const row of doc.positions) {
      const answer = await source.stateAnswer({
        n: 3,
        a: row.a,
        b: row.b,
        c: row.c,
      });
      expect(answer.p_win).toEqual(row.p);
      expect(answer.recommended).toBe(row.action);
      expect(answer.tie).toBe(row.tie);
      expect(answer.p_if_continue).toBeNull();
      expect(answer.p_if_stop).toBeNull();
      expect(answer.legal_actions).toEqual(
        row.a === 0 ? ["toss"] : ["continue", "stop"],
      );
    }
  });

  it("agrees with the service on recommendation and value", async () => {
    const source = new DocumentAnswerSource(policyFixture(4));
    for (const served of Object.values(answerFixture(4))) {
      const local = await source.stateAnswer({
        n: 4,
        a: served.a,
        b: served.b,
        c: served.c,
      });
      expect(local.recommended).toBe(served.recommended);
      expect(local.p_win).toEqual(served.p_win);
    }
  });

  it("rejects dead positions and foreign targets", async () => {
    const source = new DocumentAnswerSource(policyFixture(3));
    await expect(
      source.stateAnswer({ n: 3, a: 0, b: 0, c: 3 }),
    ).rejects.toThrow(DeadPositionError);
    await expect(
      source.stateAnswer({ n: 4, a: 0, b: 0, c: 0 }),
    ).rejects.toThrow("covers target 3");
  });
});

describe("FallbackAnswerSource", () => {
  const unreachable: AnswerSource = {
    describe: () => "dead service",
    stateAnswer: () => Promise.reject(new ServiceUnreachableError("down")),
  };

  it("falls back to the document only when the service is unreachable", async () => {
    const fallback = new DocumentAnswerSource(policyFixture(3));
    const source = new FallbackAnswerSource(unreachable, fallback);
    const answer = await source.stateAnswer({ n: 3, a: 1, b: 0, c: 0 });
    expect(answer.recommended).toBe("stop");
    expect(answer.p_win).toEqual(answerAt(3, 1, 0, 0).p_win);
  });

  it("propagates unreachability when no document is loaded", async () => {
    const source = new FallbackAnswerSource(unreachable, null);
    await expect(
      source.stateAnswer({ n: 3, a: 0, b: 0, c: 0 }),
    ).rejects.toThrow(ServiceUnreachableError);
  });

  it("does not mask dead positions as fallback cases", async () => {
    const fallback = new DocumentAnswerSource(policyFixture(3));
    const source = new FallbackAnswerSource(
      stubbedHttpSource([3]),
      fallback,
    );
    await expect(
      source.stateAnswer({ n: 3, a: 0, b: 0, c: 5 }),
    ).rejects.toThrow(DeadPositionError);
  });
});

describe("RecordingAnswerSource", () => {
  it("hands answers through and keeps a log of what was served", async () => {
    const recorder = new RecordingAnswerSource(stubbedHttpSource([2]));
    const answer = await recorder.stateAnswer({ n: 2, a: 0, b: 1, c: 1 });
    expect(answer).toEqual(answerAt(2, 0, 1, 1));
    expect(recorder.served).toEqual([answer]);
  });
});
