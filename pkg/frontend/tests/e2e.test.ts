// @vitest-environment jsdom
//
// Scripted browser session against the real game service:
//   - create a 15x15 classic game,
//   - play 8 Maker moves and check each labeled Breaker reply against the
//     service's own partner overlay,
//   - toggle the pairing overlay,
//   - drive a 4x4 board (no window fits m=12) to a full-board Draw banner.

import { type ChildProcess, spawn } from "node:child_process";
import { afterAll, beforeAll, expect, test } from "vitest";

import { GameApi, type Point } from "../src/api.js";
import { App, gatherElements } from "../src/app.js";
import { key } from "../src/model.js";
import { cellButton, installShell, waitFor } from "./dom.js";

const PORT = 20000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;

beforeAll(async () => {
  service = spawn("python3", ["-m", "pairblock.cli", "serve", "--bind", `127.0.0.1:${PORT}`], {
    stdio: "ignore",
  });
  const started = Date.now();
  for (;;) {
    try {
      const response = await fetch(`${BASE}/games/probe`);
      if (response.status === 404) break;
    } catch {
      // not accepting connections yet
    }
    if (Date.now() - started > 30_000) {
      throw new Error("game service did not come up");
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
}, 40_000);

afterAll(() => {
  service?.kill("SIGTERM");
});

function freshApp(): App {
  installShell(document);
  return new App(new GameApi(BASE), gatherElements(document));
}

async function clickAndSettle(app: App, point: Point): Promise<void> {
  const movesBefore = app.view!.cells.size;
  cellButton(document, point[0], point[1]).click();
  await waitFor(() => !app.inFlight && app.view!.cells.size > movesBefore);
}

test("full scripted session", async () => {
  const app = freshApp();
  await app.newGame({ side: 15, seed: 17, preset: "classic" });
  expect(app.view).not.toBeNull();
  expect(document.getElementById("summary")?.textContent).toContain("p=11 m=12");
  expect(document.querySelectorAll("button.cell").length).toBe(225);

  // the overlay is the service's partner data, fetched once at game start
  const overlay = app.view!.overlay;
  expect(overlay.size).toBe(225);

  const planned: Point[] = [
    [8, 8],
    [3, 3],
    [12, 5],
    [5, 12],
    [1, 15],
    [15, 1],
    [7, 2],
    [2, 9],
  ];
  let replies = 0;
  for (const target of planned) {
    // adjust if a Breaker reply took the planned cell
    let cell = target;
    if (app.view!.cells.has(key(cell))) {
      const occupied = app.view!.cells;
      outer: for (let x = 1; x <= 15; x++) {
        for (let y = 1; y <= 15; y++) {
          if (!occupied.has(key([x, y]))) {
            cell = [x, y];
            break outer;
          }
        }
      }
    }
    const occupiedBefore = new Set(app.view!.cells.keys());
    await clickAndSettle(app, cell);

    expect(cellButton(document, cell[0], cell[1]).dataset.mark).toBe("maker");
    const reply = app.view!.lastBreaker!;
    const rule = app.view!.lastRule!;
    expect(document.getElementById("last-reply")?.textContent).toContain(`[${rule}]`);

    // consistency with the service's partner data
    const info = overlay.get(key(cell))!;
    if (rule === "partner") {
      expect(info.status).toBe("matched");
      expect(key(reply)).toBe(key(info.partner!));
    } else {
      const partnerFree =
        info.status === "matched" && !occupiedBefore.has(key(info.partner!));
      expect(partnerFree).toBe(false);
    }
    replies += 1;
  }
  expect(replies).toBe(8);
  expect(app.view!.cells.size).toBe(16);

  // toggle the pairing overlay on and off
  const svg = document.getElementById("overlay-svg")!;
  app.toggleOverlay();
  expect(svg.getAttribute("data-visible")).toBe("true");
  const arrows = svg.querySelectorAll("line.pair-arrow");
  expect(arrows.length).toBeGreaterThan(50);
  app.toggleOverlay();
  expect(svg.getAttribute("data-visible")).toBe("false");

  // a 4x4 board cannot hold any length-12 window: warn, then fill to a draw
  await app.newGame({ side: 4, seed: 5, preset: "classic" });
  expect(document.getElementById("warning")?.textContent).toBe(
    "no winning window fits; game is trivially drawn",
  );
  for (let move = 0; move < 8; move++) {
    let next: Point | null = null;
    outer: for (let x = 1; x <= 4; x++) {
      for (let y = 1; y <= 4; y++) {
        if (!app.view!.cells.has(key([x, y]))) {
          next = [x, y];
          break outer;
        }
      }
    }
    expect(next).not.toBeNull();
    await clickAndSettle(app, next!);
  }
  expect(app.view!.cells.size).toBe(16);
  expect(app.view!.status).toBe("draw");
  expect(document.getElementById("banner")?.textContent).toBe(
    "Draw — strong draw audit passed",
  );
}, 60_000);

test("replaying a click sequence on the same seed reproduces the board", async () => {
  const clicks: Point[] = [
    [4, 4],
    [9, 2],
    [2, 9],
    [11, 11],
  ];
  const boards: string[] = [];
  for (let run = 0; run < 2; run++) {
    const app = freshApp();
    await app.newGame({ side: 12, seed: 99, preset: "classic" });
    for (const point of clicks) {
      await clickAndSettle(app, point);
    }
    boards.push(document.getElementById("board")!.innerHTML);
    await app.api.deleteGame(app.view!.session);
  }
  expect(boards[0]).toBe(boards[1]);
}, 60_000);
