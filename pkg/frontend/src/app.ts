/** Controller: wires the form, board clicks and overlay toggle to the API.
 * At most one move request is in flight; input is disabled until the reply
 * renders, and 409s surface as non-blocking toasts. */

import { ApiError, GameApi, Point } from "./api.js";
import {
  GameView,
  applyMove,
  canClick,
  parseDirectionsInput,
  toggleOverlay,
  viewFromState,
} from "./model.js";
import {
  renderBanner,
  renderBoard,
  renderLastReply,
  renderOverlay,
  renderSummary,
  renderWarning,
  showToast,
} from "./render.js";

export const MAX_UI_SIDE = 30;

export interface NewGameForm {
  side: number;
  seed: number;
  preset?: string;
  customDirections?: string;
}

export interface AppElements {
  board: HTMLElement;
  overlaySvg: SVGElement;
  summary: HTMLElement;
  warning: HTMLElement;
  banner: HTMLElement;
  lastReply: HTMLElement;
  formError: HTMLElement;
  toasts: HTMLElement;
}

export class App {
  view: GameView | null = null;
  inFlight = false;

  constructor(
    readonly api: GameApi,
    readonly els: AppElements,
  ) {}

  async newGame(form: NewGameForm): Promise<void> {
    this.els.formError.textContent = "";
    if (form.side > MAX_UI_SIDE) {
      this.els.formError.textContent = `board capped at N <= ${MAX_UI_SIDE} in the UI`;
      return;
    }
    let directions: number[][] | undefined;
    if (form.customDirections !== undefined) {
      try {
        directions = parseDirectionsInput(form.customDirections);
      } catch (err) {
        this.els.formError.textContent = (err as Error).message;
        return;
      }
    }
    try {
      const created = await this.api.newGame({
        N: form.side,
        seed: form.seed,
        preset: form.preset,
        directions,
      });
      const state = await this.api.getGame(created.session);
      this.view = viewFromState(state);
    } catch (err) {
      // service diagnostics are shown verbatim
      this.els.formError.textContent = (err as Error).message;
      return;
    }
    this.renderAll();
  }

  async clickCell(point: Point): Promise<void> {
    if (!this.view || this.inFlight) return;
    const check = canClick(this.view, point);
    if (!check.ok) {
      showToast(this.els.toasts, check.reason);
      return;
    }
    this.inFlight = true;
    this.setInputEnabled(false);
    try {
      const response = await this.api.move(this.view.session, point);
      this.view = applyMove(this.view, response);
      this.renderAll();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        showToast(this.els.toasts, err.message);
      } else {
        showToast(this.els.toasts, (err as Error).message);
      }
    } finally {
      this.inFlight = false;
      this.setInputEnabled(true);
    }
  }

  toggleOverlay(): void {
    if (!this.view) return;
    this.view = toggleOverlay(this.view);
    this.renderAll();
  }

  renderAll(): void {
    if (!this.view) return;
    renderSummary(this.els.summary, this.view);
    renderWarning(this.els.warning, this.view);
    renderBanner(this.els.banner, this.view);
    renderLastReply(this.els.lastReply, this.view);
    renderBoard(this.els.board, this.view, (point) => void this.clickCell(point));
    renderOverlay(this.els.overlaySvg, this.view);
  }

  private setInputEnabled(enabled: boolean): void {
    for (const cell of this.els.board.querySelectorAll<HTMLButtonElement>("button.cell")) {
      cell.disabled = !enabled;
    }
  }
}

export function gatherElements(doc: Document): AppElements {
  const get = (id: string): HTMLElement => {
    const el = doc.getElementById(id);
    if (!el) throw new Error(`missing element #${id}`);
    return el;
  };
  return {
    board: get("board"),
    overlaySvg: get("overlay-svg") as unknown as SVGElement,
    summary: get("summary"),
    warning: get("warning"),
    banner: get("banner"),
    lastReply: get("last-reply"),
    formError: get("form-error"),
    toasts: get("toasts"),
  };
}
