// Thin gateway client. Every console mutation goes through exactly one of
// these documented endpoints; fault bodies become GatewayError.

import type { GatewayConfig, Rect, WallStateDoc } from "./types.js";

export class GatewayError extends Error {
  code: string;
  status: number;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

async function parseError(res: Response): Promise<GatewayError> {
  let code = `HTTP_${res.status}`;
  let message = res.statusText;
  try {
    const body = await res.json();
    if (body.code) code = body.code;
    if (body.message) message = body.message;
    else if (body.error) message = body.error;
  } catch {
    // non-JSON error body
  }
  return new GatewayError(res.status, code, message);
}

export class Api {
  constructor(
    private base = "",
    private token: string | null = null,
  ) {}

  private headers(): Record<string, string> {
    const h: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) h["Authorization"] = `Bearer ${this.token}`;
    return h;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const res = await fetch(this.base + path, {
      method,
      headers: this.headers(),
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) throw await parseError(res);
    return (await res.json()) as T;
  }

  config(): Promise<GatewayConfig> {
    return this.request("GET", "/api/config");
  }

  wall(): Promise<WallStateDoc> {
    return this.request("GET", "/api/wall");
  }

  decks(): Promise<string[]> {
    return this.request("GET", "/api/decks");
  }

  launch(deck: string, rect: Partial<Rect>): Promise<{ windowId: number; viewId: number }> {
    return this.request("POST", "/api/shows", { deck, ...rect });
  }

  patchWindow(id: number, fields: Partial<Rect> & { z?: number }): Promise<void> {
    return this.request("PATCH", `/api/windows/${id}`, fields);
  }

  transport(id: number, verb: "next" | "prev" | "goto", index?: number): Promise<void> {
    return this.request("POST", `/api/views/${id}/${verb}`, index === undefined ? {} : { index });
  }

  exitShow(id: number): Promise<void> {
    return this.request("DELETE", `/api/shows/${id}`);
  }
}
