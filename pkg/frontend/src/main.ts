/** Browser bootstrap: wires controllers to the DOM and polls the queue. */

import { ApiClient } from "./api.js";
import { renderCaseScreen, renderQueueScreen } from "./render.js";
import { CaseController, QueueController, canSubmitOverride } from "./state.js";
import type { Band } from "./types.js";

const POLL_INTERVAL_MS = Number(
  new URLSearchParams(window.location.search).get("poll") ?? "10000",
);
const BASE_URL =
  new URLSearchParams(window.location.search).get("api") ?? "http://127.0.0.1:8000";
const REVIEWER = new URLSearchParams(window.location.search).get("reviewer") ?? "console";

const api = new ApiClient(BASE_URL);
const queue = new QueueController(api);

let activeCase: CaseController | null = null;
let pollTimer: number | undefined;

const container = document.getElementById("app");
if (container === null) {
  throw new Error("missing #app container");
}
const root: HTMLElement = container;

function draw(): void {
  if (activeCase !== null) {
    const note =
      (root.querySelector('[data-role="override-note"]') as HTMLInputElement | null)?.value ?? "";
    const band =
      (root.querySelector('[data-role="override-band"]') as HTMLSelectElement | null)?.value ?? "";
    root.innerHTML = renderCaseScreen(activeCase.state, note, band);
  } else {
    root.innerHTML = renderQueueScreen(queue.state, new Date());
  }
}

async function showQueue(): Promise<void> {
  activeCase = null;
  await queue.load();
  draw();
}

async function showCase(applicationId: string): Promise<void> {
  activeCase = new CaseController(api, applicationId);
  draw();
  await activeCase.load();
  draw();
}

root.addEventListener("click", (event) => {
  const target = (event.target as HTMLElement).closest("[data-action]");
  if (!(target instanceof HTMLElement)) return;
  const action = target.dataset.action;
  const current = activeCase;

  if (action === "reload-queue" || action === "back-to-queue") {
    void showQueue();
  } else if (action === "open-case" && target.dataset.applicationId) {
    void showCase(target.dataset.applicationId);
  } else if (current !== null && action === "approve") {
    void current.approve(REVIEWER).then(draw);
  } else if (current !== null && action === "override") {
    const band = (root.querySelector('[data-role="override-band"]') as HTMLSelectElement).value;
    const note = (root.querySelector('[data-role="override-note"]') as HTMLInputElement).value;
    if (canSubmitOverride(band as Band | "", note)) {
      void current.overrideBand(REVIEWER, band as Band, note).then(draw);
    }
  } else if (current !== null && action === "request-info") {
    const note = (root.querySelector('[data-role="info-note"]') as HTMLInputElement).value;
    void current.requestInfo(REVIEWER, note).then(draw);
  } else if (current !== null && action === "reassess") {
    void current.reassess().then(draw);
  }
});

root.addEventListener("change", (event) => {
  const target = event.target as HTMLElement;
  if (activeCase !== null && target.dataset.action === "toggle-exclusion") {
    activeCase.toggleExclusion(target.dataset.itemId ?? "");
    draw();
  }
  if (target.dataset.role === "override-band" || target.dataset.role === "override-note") {
    draw(); // re-evaluate the override guard
  }
});

function startPolling(): void {
  pollTimer = window.setInterval(() => {
    // The server is the source of truth; only the queue screen auto-refreshes.
    if (activeCase === null) {
      void queue.load().then(draw);
    }
  }, POLL_INTERVAL_MS);
}

void showQueue().then(startPolling);

export { pollTimer };
