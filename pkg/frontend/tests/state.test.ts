import { describe, expect, it } from "vitest";

import type { ExpandResponse } from "../src/api.js";
import { BoardState, BoardSubmitter } from "../src/state.js";

const response = (...texts: string[]): ExpandResponse => ({
  candidates: texts.map((text, i) => ({ text, score: 1 - i * 0.1, trace: [] })),
  diagnostics: [],
});

describe("BoardState", () => {
  it("preserves the user's word order", () => {
    const state = new BoardState();
    for (const word of ["she", "look", "picture"]) state.addWord(word);
    expect(state.payloadWords()).toEqual(["she", "look", "picture"]);
    state.addWord("yesterday");
    expect(state.payloadWords()).toEqual(["she", "look", "picture", "yesterday"]);
  });

  it("ignores blank input words", () => {
    const state = new BoardState();
    state.addWord("   ");
    expect(state.canSubmit).toBe(false);
  });

  it("maps toggles one-to-one onto payload markers", () => {
    const state = new BoardState();
    state.addWord("something");
    state.addWord("be");
    state.toggleNegation();
    expect(state.payloadWords()).toEqual(["something", "be", "not"]);
    state.toggleQuestion();
    expect(state.payloadWords()).toEqual(["something", "be", "not", "?"]);
    state.toggleNegation();
    expect(state.payloadWords()).toEqual(["something", "be", "?"]);
    state.toggleQuestion();
    expect(state.payloadWords()).toEqual(["something", "be"]);
  });

  it("removes words by position", () => {
    const state = new BoardState();
    for (const word of ["a", "b", "c"]) state.addWord(word);
    state.removeWord(1);
    expect(state.payloadWords()).toEqual(["a", "c"]);
  });

  it("keeps the board intact on service errors", () => {
    const state = new BoardState();
    state.addWord("she");
    state.toggleNegation();
    state.applyError("service unreachable");
    expect(state.error).toBe("service unreachable");
    expect(state.payloadWords()).toEqual(["she", "not"]);
  });

  it("choosing a candidate appends to history and clears the board", () => {
    const state = new BoardState();
    state.addWord("she");
    state.addWord("look");
    state.applyResponse(response("She looks.", "She looked."));
    const chosen = state.chooseCandidate(0);
    expect(chosen?.text).toBe("She looks.");
    expect(state.history.map((h) => h.text)).toEqual(["She looks."]);
    expect(state.canSubmit).toBe(false);
    expect(state.negation).toBe(false);
    expect(state.response).toBeNull();
  });

  it("ignores out-of-range candidate picks", () => {
    const state = new BoardState();
    state.addWord("she");
    state.applyResponse(response("She."));
    expect(state.chooseCandidate(4)).toBeNull();
    expect(state.history).toEqual([]);
  });
});

describe("BoardSubmitter", () => {
  it("submits the payload words and applies the response", async () => {
    const state = new BoardState();
    state.addWord("something");
    state.addWord("be");
    state.toggleNegation();
    const seen: string[][] = [];
    const submitter = new BoardSubmitter(state, async (words) => {
      seen.push(words);
      return response("Something isn't right.");
    });
    await submitter.submit();
    expect(seen).toEqual([["something", "be", "not"]]);
    expect(state.response?.candidates[0]?.text).toBe("Something isn't right.");
    expect(state.error).toBeNull();
  });

  it("does nothing when the board is empty", async () => {
    const state = new BoardState();
    let calls = 0;
    const submitter = new BoardSubmitter(state, async () => {
      calls += 1;
      return response("X.");
    });
    expect(await submitter.submit()).toBeNull();
    expect(calls).toBe(0);
  });

  it("cancels a stale in-flight request when resubmitted", async () => {
    const state = new BoardState();
    state.addWord("she");
    const aborted: boolean[] = [];
    let call = 0;
    const submitter = new BoardSubmitter(state, (words, signal) => {
      const current = call++;
      return new Promise((resolve) => {
        setTimeout(
          () => {
            aborted[current] = signal.aborted;
            resolve(response(`R${current}.`));
          },
          current === 0 ? 30 : 1,
        );
      });
    });
    const first = submitter.submit();
    const second = submitter.submit();
    const [r1, r2] = await Promise.all([first, second]);
    expect(r1).toBeNull(); // superseded: stale render dropped
    expect(r2?.candidates[0]?.text).toBe("R1.");
    expect(state.response?.candidates[0]?.text).toBe("R1.");
    expect(aborted[0]).toBe(true);
  });

  it("turns failures into an error banner and keeps the selection", async () => {
    const state = new BoardState();
    state.addWord("she");
    const submitter = new BoardSubmitter(state, async () => {
      throw new Error("boom");
    });
    await submitter.submit();
    expect(state.error).toBe("boom");
    expect(state.payloadWords()).toEqual(["she"]);
  });
});
