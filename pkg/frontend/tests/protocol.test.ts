import { describe, expect, it } from "vitest";

import {
  encodeHello,
  encodeSelect,
  encodeTranscript,
  parseMessage,
} from "../src/protocol.js";

describe("parseMessage", () => {
  it("accepts well-formed frames", () => {
    const frame = JSON.stringify({
      type: "keywords_update",
      session_id: "s",
      seq: 3,
      keywords: [{ id: "s:k0", phrase: "Paris", category: "location",
                   score: 1.5, color_code: "blue" }],
      delivery_index: 7,
    });
    const message = parseMessage(frame);
    expect(message?.type).toBe("keywords_update");
    if (message?.type === "keywords_update") {
      expect(message.keywords[0].phrase).toBe("Paris");
    }
  });

  it("rejects garbage, unknown types, and missing fields", () => {
    expect(parseMessage("{nope")).toBeNull();
    expect(parseMessage("42")).toBeNull();
    expect(parseMessage(JSON.stringify({ type: "mystery", session_id: "s" }))).toBeNull();
    expect(parseMessage(JSON.stringify({ type: "error" }))).toBeNull();
  });
});

describe("encoders", () => {
  it("build frames the hub understands", () => {
    expect(JSON.parse(encodeHello("s", "viewer"))).toEqual({
      type: "session_hello", session_id: "s", role: "viewer",
    });
    expect(JSON.parse(encodeSelect("s", "k1"))).toEqual({
      type: "select_keyword", session_id: "s", keyword_id: "k1",
    });
    expect(JSON.parse(encodeSelect("s", "k1", "map"))).toEqual({
      type: "select_keyword", session_id: "s", keyword_id: "k1", kind: "map",
    });
    expect(JSON.parse(encodeTranscript("s", 4, "hello", false))).toEqual({
      type: "transcript_update", session_id: "s", seq: 4,
      text: "hello", is_final: false,
    });
  });
});
