import { GameApi } from "./api.js";
import { App, gatherElements } from "./app.js";

function bootstrap(): void {
  const serverInput = document.getElementById("server") as HTMLInputElement;
  const form = document.getElementById("new-game-form") as HTMLFormElement;
  const overlayButton = document.getElementById("overlay-toggle") as HTMLButtonElement;

  let app = new App(new GameApi(serverInput.value), gatherElements(document));

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (app.api.baseUrl !== serverInput.value) {
      app = new App(new GameApi(serverInput.value), gatherElements(document));
    }
    const data = new FormData(form);
    const preset = String(data.get("preset") ?? "classic");
    void app.newGame({
      side: Number(data.get("side") ?? 15),
      seed: Number(data.get("seed") ?? 0),
      preset: preset === "custom" ? undefined : preset,
      customDirections:
        preset === "custom" ? String(data.get("custom") ?? "") : undefined,
    });
  });

  overlayButton.addEventListener("click", () => app.toggleOverlay());
}

document.addEventListener("DOMContentLoaded", bootstrap);
