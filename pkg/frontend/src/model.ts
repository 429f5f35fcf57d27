/** Pure view-model. The view is a function of the last service response; the
 * only client-side checks are move legality pre-checks (cell empty, Maker's
 * turn, game running). Partners are never computed here. */

import type {
  GameStateResponse,
  GameStatus,
  MoveResponse,
  OverlayEntry,
  Point,
} from "./api.js";

export type Mark = "maker" | "breaker";

export interface GameView {
  session: string;
  side: number;
  prime: number;
  winLength: number;
  directions: number[][];
  status: GameStatus;
  strongDraw: boolean | null;
  cells: Map<string, Mark>;
  overlay: Map<string, OverlayEntry>;
  overlayVisible: boolean;
  lastMaker: Point | null;
  lastBreaker: Point | null;
  lastRule: "partner" | "fallback" | null;
}

export const key = (point: Point): string => `${point[0]},${point[1]}`;

export function viewFromState(state: GameStateResponse): GameView {
  const cells = new Map<string, Mark>();
  for (const cell of state.cells) {
    cells.set(key(cell.point), cell.mark);
  }
  const overlay = new Map<string, OverlayEntry>();
  for (const entry of state.overlay) {
    overlay.set(key(entry.point), entry);
  }
  const makers = state.moves.filter((m) => m.player === "maker");
  const breakers = state.moves.filter((m) => m.player === "breaker");
  const lastBreaker = breakers.at(-1);
  return {
    session: state.session,
    side: state.N,
    prime: state.p,
    winLength: state.m,
    directions: state.directions,
    status: state.status,
    strongDraw: state.strong_draw,
    cells,
    overlay,
    overlayVisible: false,
    lastMaker: makers.at(-1)?.point ?? null,
    lastBreaker: lastBreaker?.point ?? null,
    lastRule: lastBreaker?.rule ?? null,
  };
}

export function applyMove(view: GameView, response: MoveResponse): GameView {
  const cells = new Map(view.cells);
  cells.set(key(response.maker.point), "maker");
  if (response.breaker) {
    cells.set(key(response.breaker.point), "breaker");
  }
  return {
    ...view,
    cells,
    status: response.status,
    strongDraw: response.strong_draw,
    lastMaker: response.maker.point,
    lastBreaker: response.breaker?.point ?? view.lastBreaker,
    lastRule: response.breaker?.rule ?? null,
  };
}

export function toggleOverlay(view: GameView): GameView {
  return { ...view, overlayVisible: !view.overlayVisible };
}

export type ClickCheck = { ok: true } | { ok: false; reason: string };

export function canClick(view: GameView, point: Point): ClickCheck {
  if (view.status !== "in_progress") {
    return { ok: false, reason: "game is over" };
  }
  if (view.cells.has(key(point))) {
    return { ok: false, reason: "cell is occupied" };
  }
  return { ok: true };
}

/** m > N leaves no room for any window: every direction has a nonzero
 * coordinate, so a window of length m spans at least m cells on some axis. */
export function boardWarning(view: GameView): string | null {
  if (view.winLength > view.side) {
    return "no winning window fits; game is trivially drawn";
  }
  return null;
}

export function parseDirectionsInput(text: string): number[][] {
  const out: number[][] = [];
  for (const chunk of text.split(";")) {
    const trimmed = chunk.trim();
    if (!trimmed) continue;
    const coords = trimmed.split(",").map((c) => Number.parseInt(c.trim(), 10));
    if (coords.length !== 2 || coords.some((c) => Number.isNaN(c))) {
      throw new Error(`bad direction "${trimmed}": expected two integers`);
    }
    out.push(coords);
  }
  if (out.length === 0) {
    throw new Error("no directions given");
  }
  return out;
}

/** Pairs to draw as overlay arrows, one per matched pair. */
export function overlayArrows(view: GameView): {
  from: Point;
  to: Point;
  direction: number;
}[] {
  const arrows: { from: Point; to: Point; direction: number }[] = [];
  for (const entry of view.overlay.values()) {
    if (entry.status !== "matched" || !entry.partner) continue;
    const from = entry.point;
    const to = entry.partner;
    // each pair appears twice in the overlay; keep the lexicographically
    // smaller endpoint as the source so it is drawn once
    if (from[0] > to[0] || (from[0] === to[0] && from[1] > to[1])) continue;
    arrows.push({ from, to, direction: entry.direction_index ?? 0 });
  }
  return arrows;
}
