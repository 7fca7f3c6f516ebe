/**
 * DOM wiring for the compliance chat page: question box, message
 * history, "Tools Used" badges, and the expandable chain-log panel.
 */

import { ChatHttpError, getHealth, postChat } from "./client.js";
import {
  applyFailure,
  applyResponse,
  applyValidation,
  beginSend,
  initialState,
  toggleChainLog,
  type ChatViewState,
} from "./state.js";

export interface ChatAppDeps {
  fetchImpl?: typeof fetch;
  baseUrl?: string;
}

export interface ChatApp {
  sendMessage(text: string): Promise<void>;
  toggleChainLog(): void;
  getState(): ChatViewState;
  refreshHealth(): Promise<void>;
}

export function createChatApp(root: HTMLElement, deps: ChatAppDeps = {}): ChatApp {
  const fetchImpl = deps.fetchImpl ?? fetch;
  const baseUrl = deps.baseUrl ?? "";
  let state = initialState();

  root.innerHTML = `
    <header>
      <span class="title">Compliance Chatbot</span>
      <span id="health" class="health" title="service status"></span>
    </header>
    <main>
      <ul id="messages" class="messages"></ul>
      <section class="tools">
        <span class="tools-label">Tools Used:</span>
        <span id="tool-badges" class="badges"></span>
      </section>
      <section class="chain">
        <button id="chain-toggle" type="button">Chain Log</button>
        <ol id="chain-panel" class="chain-panel" hidden></ol>
      </section>
    </main>
    <form id="chat-form">
      <input id="chat-input" autocomplete="off"
             placeholder="Ask a question (e.g. lighting compliance)..." />
      <button id="chat-send" type="submit">Send</button>
      <span id="validation" class="validation"></span>
    </form>
  `;

  const messagesEl = root.querySelector<HTMLUListElement>("#messages")!;
  const badgesEl = root.querySelector<HTMLSpanElement>("#tool-badges")!;
  const chainToggleEl = root.querySelector<HTMLButtonElement>("#chain-toggle")!;
  const chainPanelEl = root.querySelector<HTMLOListElement>("#chain-panel")!;
  const formEl = root.querySelector<HTMLFormElement>("#chat-form")!;
  const inputEl = root.querySelector<HTMLInputElement>("#chat-input")!;
  const sendEl = root.querySelector<HTMLButtonElement>("#chat-send")!;
  const validationEl = root.querySelector<HTMLSpanElement>("#validation")!;
  const healthEl = root.querySelector<HTMLSpanElement>("#health")!;

  function render(): void {
    messagesEl.replaceChildren(
      ...state.messages.map((bubble) => {
        const item = document.createElement("li");
        item.className = `bubble ${bubble.role}`;
        item.textContent = bubble.text;
        return item;
      }),
    );

    badgesEl.replaceChildren(
      ...state.lastToolsUsed.map((name) => {
        const badge = document.createElement("span");
        badge.className = "badge";
        badge.textContent = name;
        return badge;
      }),
    );

    chainPanelEl.hidden = !state.chainLogVisible;
    if (state.chainLog.length === 0) {
      const empty = document.createElement("li");
      empty.className = "chain-empty";
      empty.textContent = "no steps";
      chainPanelEl.replaceChildren(empty);
    } else {
      chainPanelEl.replaceChildren(
        ...state.chainLog.map((step) => {
          const row = document.createElement("li");
          row.className = `chain-step ${step.role}`;
          row.textContent = `${step.role}: ${step.text}`;
          return row;
        }),
      );
    }

    inputEl.disabled = state.pending;
    sendEl.disabled = state.pending;
    validationEl.textContent = state.validation ?? "";
    messagesEl.scrollTop = messagesEl.scrollHeight;
  }

  async function sendMessage(text: string): Promise<void> {
    const trimmed = text.trim();
    if (state.pending) {
      return;
    }
    if (!trimmed) {
      state = applyValidation(state, "Enter a question first.");
      render();
      return;
    }
    state = beginSend(state, trimmed);
    render();
    try {
      const body: { message: string; session_id?: string } = { message: trimmed };
      if (state.sessionId) {
        body.session_id = state.sessionId;
      }
      const payload = await postChat(body, fetchImpl, baseUrl);
      state = applyResponse(state, payload);
    } catch (err) {
      if (err instanceof ChatHttpError && err.status === 400) {
        state = applyValidation(state, err.detail);
      } else {
        const detail = err instanceof Error ? err.message : String(err);
        state = applyFailure(state, detail);
      }
    }
    render();
    inputEl.value = "";
    inputEl.focus();
  }

  async function refreshHealth(): Promise<void> {
    const ok = await getHealth(fetchImpl, baseUrl);
    healthEl.textContent = ok ? "online" : "offline";
    healthEl.classList.toggle("offline", !ok);
  }

  formEl.addEventListener("submit", (event) => {
    event.preventDefault();
    void sendMessage(inputEl.value);
  });
  chainToggleEl.addEventListener("click", () => {
    state = toggleChainLog(state);
    render();
  });

  render();
  return {
    sendMessage,
    toggleChainLog: () => {
      state = toggleChainLog(state);
      render();
    },
    getState: () => state,
    refreshHealth,
  };
}
