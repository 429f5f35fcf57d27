/** DOM rendering. Cells are buttons in a CSS grid; the pairing overlay is an
 * SVG layer with one colored arrow per matched pair, computed from fixed cell
 * geometry (no layout measurement, so it renders identically under jsdom). */

import type { Point } from "./api.js";
import { GameView, boardWarning, key, overlayArrows } from "./model.js";

export const CELL_SIZE = 32;

const DIRECTION_COLORS = [
  "#d62728",
  "#2ca02c",
  "#1f77b4",
  "#ff7f0e",
  "#9467bd",
  "#8c564b",
];

const STATUS_BANNERS: Record<string, string> = {
  in_progress: "Game in progress",
  draw: "Draw",
  maker_win: "Maker wins",
};

export function renderSummary(el: HTMLElement, view: GameView): void {
  const dirs = view.directions.map((d) => `(${d.join(",")})`).join(" ");
  el.textContent = `p=${view.prime} m=${view.winLength} directions: ${dirs}`;
}

export function renderWarning(el: HTMLElement, view: GameView): void {
  el.textContent = boardWarning(view) ?? "";
}

export function renderBanner(el: HTMLElement, view: GameView): void {
  let text = STATUS_BANNERS[view.status] ?? view.status;
  if (view.status === "draw") {
    text += view.strongDraw ? " — strong draw audit passed" : " — strong draw audit FAILED";
  }
  el.textContent = text;
  el.dataset.status = view.status;
}

export function renderLastReply(el: HTMLElement, view: GameView): void {
  if (!view.lastBreaker || !view.lastRule) {
    el.textContent = "";
    return;
  }
  el.textContent = `Breaker replied at (${view.lastBreaker.join(",")}) [${view.lastRule}]`;
  el.dataset.rule = view.lastRule;
}

export function renderBoard(
  board: HTMLElement,
  view: GameView,
  onClick: (point: Point) => void,
): void {
  board.textContent = "";
  board.style.display = "grid";
  board.style.gridTemplateColumns = `repeat(${view.side}, ${CELL_SIZE}px)`;
  for (let y = view.side; y >= 1; y--) {
    for (let x = 1; x <= view.side; x++) {
      const point: Point = [x, y];
      const k = key(point);
      const cell = board.ownerDocument.createElement("button");
      cell.className = "cell";
      cell.dataset.x = String(x);
      cell.dataset.y = String(y);
      const mark = view.cells.get(k);
      if (mark) {
        cell.dataset.mark = mark;
        cell.textContent = mark === "maker" ? "X" : "O";
      }
      const info = view.overlay.get(k);
      if (info) {
        cell.dataset.partnerStatus = info.status;
        if (view.overlayVisible && info.status === "unmatched") {
          cell.classList.add("dimmed");
        }
        if (view.overlayVisible && info.status === "off_board") {
          cell.classList.add("edge-paired");
          if (!mark) cell.textContent = "⇥";
        }
      }
      if (view.lastMaker && key(view.lastMaker) === k) cell.classList.add("last-maker");
      if (view.lastBreaker && key(view.lastBreaker) === k) cell.classList.add("last-breaker");
      cell.addEventListener("click", () => onClick(point));
      board.appendChild(cell);
    }
  }
}

function cellCenter(point: Point, side: number): [number, number] {
  const [x, y] = point;
  return [(x - 0.5) * CELL_SIZE, (side - y + 0.5) * CELL_SIZE];
}

export function renderOverlay(svg: SVGElement, view: GameView): void {
  const doc = svg.ownerDocument;
  svg.textContent = "";
  svg.setAttribute("width", String(view.side * CELL_SIZE));
  svg.setAttribute("height", String(view.side * CELL_SIZE));
  if (!view.overlayVisible) {
    svg.setAttribute("data-visible", "false");
    return;
  }
  svg.setAttribute("data-visible", "true");
  const defs = doc.createElementNS("http://www.w3.org/2000/svg", "defs");
  const marker = doc.createElementNS("http://www.w3.org/2000/svg", "marker");
  marker.setAttribute("id", "arrowhead");
  marker.setAttribute("markerWidth", "6");
  marker.setAttribute("markerHeight", "6");
  marker.setAttribute("refX", "5");
  marker.setAttribute("refY", "3");
  marker.setAttribute("orient", "auto");
  const tip = doc.createElementNS("http://www.w3.org/2000/svg", "path");
  tip.setAttribute("d", "M0,0 L6,3 L0,6 z");
  marker.appendChild(tip);
  defs.appendChild(marker);
  svg.appendChild(defs);
  for (const arrow of overlayArrows(view)) {
    const [x1, y1] = cellCenter(arrow.from, view.side);
    const [x2, y2] = cellCenter(arrow.to, view.side);
    const line = doc.createElementNS("http://www.w3.org/2000/svg", "line");
    line.setAttribute("x1", String(x1));
    line.setAttribute("y1", String(y1));
    line.setAttribute("x2", String(x2));
    line.setAttribute("y2", String(y2));
    line.setAttribute("stroke", DIRECTION_COLORS[arrow.direction % DIRECTION_COLORS.length]);
    line.setAttribute("stroke-width", "2");
    line.setAttribute("marker-end", "url(#arrowhead)");
    line.setAttribute("class", "pair-arrow");
    line.setAttribute("data-direction", String(arrow.direction));
    svg.appendChild(line);
  }
}

export function showToast(el: HTMLElement, message: string): void {
  const doc = el.ownerDocument;
  const toast = doc.createElement("div");
  toast.className = "toast";
  toast.textContent = message;
  el.appendChild(toast);
  const win = doc.defaultView;
  if (win) {
    win.setTimeout(() => toast.remove(), 2500);
  }
}
