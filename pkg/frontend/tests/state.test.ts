import { describe, expect, it } from "vitest";

import {
  DEFAULT_STATE,
  decodeState,
  encodeState,
  resultsQuery,
  type ViewState,
} from "../src/state.js";

describe("view state <-> URL", () => {
  it("round-trips a fully populated state", () => {
    const state: ViewState = {
      session: "abc123",
      round: 2,
      epsilon: 0.4,
      trim: 5,
      filter: "consensus",
      q: "satisfied",
      sort: "ci:desc",
      compare: [1, 2],
    };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("encodes defaults as an empty query", () => {
    expect(encodeState({ ...DEFAULT_STATE })).toBe("");
  });

  it("decoding an empty query yields the defaults", () => {
    expect(decodeState("")).toEqual(DEFAULT_STATE);
  });

  it("ignores malformed values instead of breaking the view", () => {
    const state = decodeState("trim=s9&filter=bogus&sort=ci:sideways&epsilon=nan&round=-2");
    expect(state.trim).toBe(0);
    expect(state.filter).toBe("all");
    expect(state.sort).toBeNull();
    expect(state.round).toBe(1);
  });

  it("clamps epsilon into [0, 1]", () => {
    expect(decodeState("epsilon=7").epsilon).toBe(1);
    expect(decodeState("epsilon=-1").epsilon).toBe(0);
  });

  it("URL state maps one-to-one onto the results query grammar", () => {
    const state = decodeState("session=s&epsilon=0.2&trim=s3&filter=writing&q=video&sort=is:asc");
    const query = new URLSearchParams(resultsQuery(state));
    expect(query.get("epsilon")).toBe("0.2");
    expect(query.get("trim")).toBe("s3");
    expect(query.get("filter")).toBe("writing");
    expect(query.get("q")).toBe("video");
    expect(query.get("sort")).toBe("is:asc");
  });

  it("default view needs no query parameters server-side", () => {
    expect(resultsQuery({ ...DEFAULT_STATE })).toBe("");
  });
});
