/** Typed client for the game service. All game knowledge lives server-side;
 * the client only transports JSON. */

export type Point = [number, number];

export interface NewGameRequest {
  N: number;
  seed: number;
  directions?: number[][];
  preset?: string;
}

export interface NewGameResponse {
  version: string;
  session: string;
  p: number;
  m: number;
  N: number;
  d: number;
}

export type PartnerStatus = "matched" | "off_board" | "unmatched";

export interface OverlayEntry {
  point: Point;
  status: PartnerStatus;
  partner?: Point;
  direction_index?: number;
}

export interface MoveRecord {
  ply: number;
  player: "maker" | "breaker";
  point: Point;
  rule: "partner" | "fallback" | null;
}

export type GameStatus = "in_progress" | "draw" | "maker_win";

export interface GameStateResponse {
  version: string;
  session: string;
  N: number;
  d: number;
  directions: number[][];
  p: number;
  m: number;
  status: GameStatus;
  next_player: "maker" | "breaker" | null;
  moves: MoveRecord[];
  cells: { point: Point; mark: "maker" | "breaker" }[];
  overlay: OverlayEntry[];
  strong_draw: boolean | null;
}

export interface MoveResponse {
  version: string;
  maker: { point: Point };
  breaker: { point: Point; rule: "partner" | "fallback" } | null;
  status: GameStatus;
  strong_draw: boolean | null;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const code = typeof body.code === "string" ? body.code : "error";
    const message = typeof body.message === "string" ? body.message : response.statusText;
    throw new ApiError(response.status, code, message);
  }
  return body as T;
}

export class GameApi {
  constructor(readonly baseUrl: string) {}

  newGame(req: NewGameRequest): Promise<NewGameResponse> {
    return request(`${this.baseUrl}/games`, {
      method: "POST",
      body: JSON.stringify(req),
    });
  }

  getGame(session: string): Promise<GameStateResponse> {
    return request(`${this.baseUrl}/games/${session}`);
  }

  move(session: string, point: Point): Promise<MoveResponse> {
    return request(`${this.baseUrl}/games/${session}/move`, {
      method: "POST",
      body: JSON.stringify({ point }),
    });
  }

  deleteGame(session: string): Promise<void> {
    return request(`${this.baseUrl}/games/${session}`, { method: "DELETE" });
  }
}
