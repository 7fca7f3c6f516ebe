/** Thin fetch client for the chat service endpoints. */

import type { ChatResponsePayload } from "./state.js";

export interface ChatRequestBody {
  message: string;
  session_id?: string;
}

export class ChatHttpError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`chat endpoint returned ${status}: ${detail}`);
  }
}

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    return body.error ?? response.statusText;
  } catch {
    return response.statusText;
  }
}

export async function postChat(
  body: ChatRequestBody,
  fetchImpl: typeof fetch = fetch,
  baseUrl = "",
): Promise<ChatResponsePayload> {
  const response = await fetchImpl(`${baseUrl}/api/chat`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!response.ok) {
    throw new ChatHttpError(response.status, await errorDetail(response));
  }
  return (await response.json()) as ChatResponsePayload;
}

export async function getHealth(
  fetchImpl: typeof fetch = fetch,
  baseUrl = "",
): Promise<boolean> {
  try {
    const response = await fetchImpl(`${baseUrl}/api/health`);
    return response.ok;
  } catch {
    return false;
  }
}
