import { beforeEach, describe, expect, it, vi } from "vitest";

import { createChatApp } from "../src/app.js";
import type { ChatResponsePayload } from "../src/state.js";

const FIGURE_PAYLOAD: ChatResponsePayload = {
  session_id: "session-7c",
  input:
    "What is the lighting power allowance for a 500-square-meter bank" +
    " according to ASHRAE 90.1-2022?",
  output: "3019 W",
  tools_used: ["LightingAllowedWattage"],
  chain_log: [
    { role: "user", text: "What is the lighting power allowance..." },
    { role: "assistant", text: "Action: LightingAllowedWattage\nAction Input: ..." },
    { role: "observation", text: "3019" },
  ],
};

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function mount() {
  document.body.innerHTML = '<div id="app"></div>';
  return document.getElementById("app") as HTMLElement;
}

describe("chat app", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
  });

  it("renders the answer bubble and tool badge from the endpoint payload", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(FIGURE_PAYLOAD));
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });

    await app.sendMessage(
      "What is the lighting power allowance for a 500-square-meter bank" +
        " according to ASHRAE 90.1-2022?",
    );

    const bubbles = [...document.querySelectorAll(".bubble")];
    expect(bubbles.at(-1)?.textContent).toBe("3019 W");
    expect(bubbles.at(-1)?.classList.contains("assistant")).toBe(true);

    const badges = [...document.querySelectorAll(".badge")];
    expect(badges.map((b) => b.textContent)).toEqual(["LightingAllowedWattage"]);

    expect(fetchMock).toHaveBeenCalledTimes(1);
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("/api/chat");
    expect(JSON.parse((init as RequestInit).body as string).message).toContain("bank");
  });

  it("never issues a request for empty input", async () => {
    const fetchMock = vi.fn();
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });
    await app.sendMessage("");
    await app.sendMessage("   ");
    expect(fetchMock).not.toHaveBeenCalled();
    expect(app.getState().validation).toBeTruthy();
    expect(document.querySelectorAll(".bubble")).toHaveLength(0);
  });

  it("shows an error bubble on 503 and re-enables the input", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValue(jsonResponse({ error: "generator offline" }, 503));
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });
    await app.sendMessage("hello");

    const last = [...document.querySelectorAll(".bubble")].at(-1);
    expect(last?.classList.contains("error")).toBe(true);
    expect(last?.textContent).toContain("503");
    expect(app.getState().pending).toBe(false);
    const input = document.querySelector<HTMLInputElement>("#chat-input");
    expect(input?.disabled).toBe(false);
  });

  it("renders a 400 as an inline validation message, not a bubble", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValue(jsonResponse({ error: "message must be non-empty" }, 400));
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });
    await app.sendMessage("hi");
    expect(document.querySelector("#validation")?.textContent).toContain(
      "message must be non-empty",
    );
    expect(document.querySelectorAll(".bubble.error")).toHaveLength(0);
  });

  it("network failure appends an error bubble", async () => {
    const fetchMock = vi.fn().mockRejectedValue(new TypeError("fetch failed"));
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });
    await app.sendMessage("hello");
    const last = [...document.querySelectorAll(".bubble")].at(-1);
    expect(last?.classList.contains("error")).toBe(true);
  });

  it("chain log toggles, shows steps verbatim and in order", async () => {
    const fetchMock = vi.fn().mockResolvedValue(jsonResponse(FIGURE_PAYLOAD));
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });
    await app.sendMessage("q");

    const panel = document.querySelector<HTMLOListElement>("#chain-panel")!;
    expect(panel.hidden).toBe(true);
    app.toggleChainLog();
    expect(panel.hidden).toBe(false);
    const rows = [...panel.querySelectorAll(".chain-step")];
    expect(rows).toHaveLength(3);
    expect(rows[2].textContent).toBe("observation: 3019");
    app.toggleChainLog();
    expect(panel.hidden).toBe(true);
  });

  it("empty chain log renders the no-steps row", () => {
    const app = createChatApp(mount(), { fetchImpl: vi.fn() as typeof fetch });
    app.toggleChainLog();
    expect(document.querySelector(".chain-empty")?.textContent).toBe("no steps");
  });

  it("keeps one request in flight and reuses the session id", async () => {
    let resolveFirst: (value: Response) => void = () => {};
    const fetchMock = vi
      .fn()
      .mockImplementationOnce(
        () => new Promise<Response>((resolve) => (resolveFirst = resolve)),
      )
      .mockImplementationOnce(() => Promise.resolve(jsonResponse(FIGURE_PAYLOAD)));
    const app = createChatApp(mount(), { fetchImpl: fetchMock as typeof fetch });

    const first = app.sendMessage("first");
    await app.sendMessage("second while pending"); // ignored: already pending
    expect(fetchMock).toHaveBeenCalledTimes(1);

    resolveFirst(jsonResponse(FIGURE_PAYLOAD));
    await first;
    expect(app.getState().sessionId).toBe("session-7c");

    await app.sendMessage("follow-up");
    const body = JSON.parse(
      (fetchMock.mock.calls[1][1] as RequestInit).body as string,
    );
    expect(body.session_id).toBe("session-7c");
  });
});
