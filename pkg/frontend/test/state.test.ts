import { describe, expect, it } from "vitest";

import {
  applyFailure,
  applyResponse,
  applyValidation,
  beginSend,
  initialState,
  toggleChainLog,
  type ChatResponsePayload,
} from "../src/state.js";

const PAYLOAD: ChatResponsePayload = {
  session_id: "s-1",
  output: "3019 W",
  tools_used: ["LightingAllowedWattage"],
  chain_log: [
    { role: "assistant", text: "Action: LightingAllowedWattage" },
    { role: "observation", text: "3019" },
    { role: "assistant", text: "Final Answer: 3019 W" },
  ],
};

describe("state transitions", () => {
  it("beginSend appends the user bubble and sets pending", () => {
    const state = beginSend(initialState(), "hello");
    expect(state.messages).toEqual([{ role: "user", text: "hello" }]);
    expect(state.pending).toBe(true);
  });

  it("applyResponse appends assistant output and endpoint data only", () => {
    const state = applyResponse(beginSend(initialState(), "q"), PAYLOAD);
    expect(state.messages.at(-1)).toEqual({ role: "assistant", text: "3019 W" });
    expect(state.lastToolsUsed).toEqual(["LightingAllowedWattage"]);
    expect(state.chainLog).toHaveLength(3);
    expect(state.sessionId).toBe("s-1");
    expect(state.pending).toBe(false);
  });

  it("messages are append-only in arrival order", () => {
    let state = beginSend(initialState(), "first");
    state = applyResponse(state, PAYLOAD);
    state = beginSend(state, "second");
    state = applyFailure(state, "network down");
    expect(state.messages.map((m) => m.role)).toEqual([
      "user",
      "assistant",
      "user",
      "error",
    ]);
  });

  it("failure clears pending and adds an error bubble", () => {
    const state = applyFailure(beginSend(initialState(), "q"), "boom");
    expect(state.pending).toBe(false);
    expect(state.messages.at(-1)?.role).toBe("error");
  });

  it("validation message does not add a bubble", () => {
    const state = applyValidation(beginSend(initialState(), "q"), "too vague");
    expect(state.validation).toBe("too vague");
    expect(state.messages.filter((m) => m.role === "error")).toHaveLength(0);
  });

  it("toggling the chain log twice restores visibility", () => {
    const once = toggleChainLog(initialState());
    expect(once.chainLogVisible).toBe(true);
    expect(toggleChainLog(once).chainLogVisible).toBe(false);
  });
});
