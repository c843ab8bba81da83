/**
 * Typed client for the game service. The UI consumes these endpoints and
 * nothing else; every number shown on screen originates from one of these
 * response payloads.
 */

export type RoleName = "P" | "N";
export type SignSymbol = "+" | "-";
export type LayoutKind = "cycle" | "bipartite" | "star" | "path" | "generic";

export interface GraphPayload {
  n: number;
  edges: [number, number][];
}

export interface CompletedEdge {
  edge: [number, number];
  score: number;
}

export interface GameView {
  id: string;
  graph: GraphPayload;
  spec: string;
  cells: (SignSymbol | null)[];
  to_move: RoleName | "none";
  banked_score: number;
  completed_edges: CompletedEdge[];
  status: "in_progress" | "finished";
  outcome: RoleName | "draw" | null;
  human_role: RoleName;
  first_role: RoleName;
  layout: LayoutKind;
  last_move?: { v: number; sign: SignSymbol };
  banked_delta?: number;
  new_edges?: CompletedEdge[];
}

export interface HintPayload {
  best_move: { v: number; sign: SignSymbol } | null;
  value: number;
  outcome_with_optimal_play: RoleName | "draw";
}

export interface ApiErrorPayload {
  code: string;
  message: string;
}

export interface SessionSetup {
  graph: string;
  first_role: RoleName;
  human_role: RoleName;
}

/** Service error carrying the machine-readable code. */
export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, payload: ApiErrorPayload) {
    super(payload.message);
    this.code = payload.code;
    this.status = status;
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, init);
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiError(resp.status, body as ApiErrorPayload);
  }
  return body as T;
}

export class GameClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  createGame(setup: SessionSetup): Promise<GameView> {
    return request<GameView>(this.url("/games"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(setup),
    });
  }

  getGame(id: string): Promise<GameView> {
    return request<GameView>(this.url(`/games/${id}`));
  }

  postMove(id: string, vertex: number, sign: SignSymbol): Promise<GameView> {
    return request<GameView>(this.url(`/games/${id}/moves`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ vertex, sign }),
    });
  }

  engineMove(id: string): Promise<GameView> {
    return request<GameView>(this.url(`/games/${id}/engine-move`), { method: "POST" });
  }

  hint(id: string): Promise<HintPayload> {
    return request<HintPayload>(this.url(`/games/${id}/hint`));
  }

  health(): Promise<{ status: string }> {
    return request<{ status: string }>(this.url("/health"));
  }
}
