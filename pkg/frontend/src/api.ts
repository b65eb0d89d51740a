import type { z } from "zod";
import {
  ErrorPayloadSchema,
  GraphPayloadSchema,
  SessionSchema,
  SolveResponseSchema,
  type GraphPayload,
  type NewGameRequest,
  type Session,
  type SolveRequest,
  type SolveResponse,
} from "./types.js";

/** Error raised for every non-2xx response and for unparseable payloads.
 *
 * `kind` carries the server's machine-readable error kind ("illegal_move",
 * "unknown_session", "limit_exceeded", ...) so callers can branch without
 * string-matching messages.
 */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly kind: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const jsonInit = (method: string, body: unknown): RequestInit => ({
  method,
  headers: { "Content-Type": "application/json" },
  body: JSON.stringify(body),
});

/** Thin typed wrapper over the server's REST endpoints.
 *
 * The fetch implementation is injectable so tests can stub the transport;
 * the default arrow keeps `fetch` bound to the global object in browsers.
 */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<S extends z.ZodTypeAny>(
    schema: S,
    path: string,
    init?: RequestInit,
  ): Promise<z.infer<S>> {
    const res = await this.fetchImpl(this.baseUrl + path, init);
    const text = await res.text();
    let data: unknown = null;
    if (text) {
      try {
        data = JSON.parse(text);
      } catch {
        throw new ApiError(res.status, "bad_payload", "server sent invalid JSON");
      }
    }
    if (!res.ok) {
      const err = ErrorPayloadSchema.safeParse(data);
      if (err.success) {
        throw new ApiError(res.status, err.data.kind, err.data.error);
      }
      throw new ApiError(res.status, "http_error", `unexpected HTTP ${res.status}`);
    }
    const parsed = schema.safeParse(data);
    if (!parsed.success) {
      throw new ApiError(res.status, "bad_payload", `response shape mismatch: ${parsed.error.message}`);
    }
    return parsed.data;
  }

  createGame(req: NewGameRequest): Promise<Session> {
    return this.request(SessionSchema, "/api/games", jsonInit("POST", req));
  }

  getGame(id: string): Promise<Session> {
    return this.request(SessionSchema, `/api/games/${id}`);
  }

  postMove(id: string, to: string): Promise<Session> {
    return this.request(SessionSchema, `/api/games/${id}/moves`, jsonInit("POST", { to }));
  }

  solve(req: SolveRequest): Promise<SolveResponse> {
    return this.request(SolveResponseSchema, `/api/solve?${solveQuery(req)}`);
  }

  getGraph(family: string, n?: number): Promise<GraphPayload> {
    const q = new URLSearchParams({ family });
    if (n !== undefined) q.set("n", String(n));
    return this.request(GraphPayloadSchema, `/api/graph?${q}`);
  }
}

function solveQuery(req: SolveRequest): string {
  const q = new URLSearchParams({ family: req.family });
  if (req.n !== undefined) q.set("n", String(req.n));
  if (req.p !== undefined) q.set("p", String(req.p));
  if (req.start !== undefined) q.set("start", req.start);
  return q.toString();
}
