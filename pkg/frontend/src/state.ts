/**
 * Chat view state and its pure transitions.
 *
 * The UI never computes compliance values itself: every assistant
 * bubble, tool badge, and chain-log row comes straight from the
 * endpoint payload. Messages are append-only and at most one request
 * is in flight.
 */

export interface ChainStep {
  role: string;
  text: string;
}

export interface ChatResponsePayload {
  session_id: string;
  input?: string;
  output: string;
  tools_used: string[];
  chain_log: ChainStep[];
  metrics?: Record<string, unknown>;
}

export type BubbleRole = "user" | "assistant" | "error";

export interface Bubble {
  role: BubbleRole;
  text: string;
}

export interface ChatViewState {
  messages: Bubble[];
  pending: boolean;
  lastToolsUsed: string[];
  chainLog: ChainStep[];
  chainLogVisible: boolean;
  sessionId: string | null;
  validation: string | null;
}

export function initialState(): ChatViewState {
  return {
    messages: [],
    pending: false,
    lastToolsUsed: [],
    chainLog: [],
    chainLogVisible: false,
    sessionId: null,
    validation: null,
  };
}

/** Append the user's bubble and mark the round trip as started. */
export function beginSend(state: ChatViewState, text: string): ChatViewState {
  return {
    ...state,
    messages: [...state.messages, { role: "user", text }],
    pending: true,
    validation: null,
  };
}

/** Fold a successful /api/chat payload into the view. */
export function applyResponse(
  state: ChatViewState,
  payload: ChatResponsePayload,
): ChatViewState {
  return {
    ...state,
    messages: [...state.messages, { role: "assistant", text: payload.output }],
    pending: false,
    lastToolsUsed: [...payload.tools_used],
    chainLog: [...payload.chain_log],
    sessionId: payload.session_id,
  };
}

/** Network failure or non-validation server error: error bubble, input re-enabled. */
export function applyFailure(state: ChatViewState, message: string): ChatViewState {
  return {
    ...state,
    messages: [...state.messages, { role: "error", text: message }],
    pending: false,
  };
}

/** 400-style problems render inline next to the input, not as a bubble. */
export function applyValidation(state: ChatViewState, message: string): ChatViewState {
  return { ...state, pending: false, validation: message };
}

export function toggleChainLog(state: ChatViewState): ChatViewState {
  return { ...state, chainLogVisible: !state.chainLogVisible };
}
