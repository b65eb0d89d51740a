import { ApiClient } from "./api.js";
import {
  boardView,
  EXPIRED_NOTICE,
  moveLogLines,
  previewView,
  renderBoardSvg,
  statusLine,
  winBannerText,
} from "./board.js";
import { GameController, type AppState } from "./controller.js";
import type { NewGameRequest, Player } from "./types.js";

/** DOM glue: reads the form, renders AppState, and forwards clicks.
 * Everything with behavior worth testing lives in board.ts / controller.ts.
 */

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

const familySelect = el<HTMLSelectElement>("family");
const sizeInput = el<HTMLInputElement>("size");
const startSelect = el<HTMLSelectElement>("start");
const sideSelect = el<HTMLSelectElement>("side");
const form = el<HTMLFormElement>("setup");
const newGameButton = el<HTMLButtonElement>("new-game");
const restartButton = el<HTMLButtonElement>("restart");
const boardHost = el<HTMLDivElement>("board");
const badgeEl = el<HTMLSpanElement>("badge");
const bannerEl = el<HTMLDivElement>("banner");
const statusEl = el<HTMLDivElement>("status");
const toastEl = el<HTMLDivElement>("toast");
const logEl = el<HTMLOListElement>("log");

const controller = new GameController(new ApiClient(""), render);
let toastTimer: number | undefined;

function render(state: AppState): void {
  if (state.session) {
    boardHost.innerHTML = renderBoardSvg(boardView(state.session));
    statusEl.textContent = statusLine(state.session);
    logEl.innerHTML = moveLogLines(state.session)
      .map((line) => `<li>${line}</li>`)
      .join("");
  } else if (state.preview) {
    boardHost.innerHTML = renderBoardSvg(previewView(state.preview));
    statusEl.textContent = "pick a start vertex and press play";
    logEl.innerHTML = "";
    syncStartOptions(state.preview.vertices);
  } else {
    boardHost.innerHTML = "";
    statusEl.textContent = "";
    logEl.innerHTML = "";
  }

  badgeEl.textContent = state.badge;
  badgeEl.hidden = state.badge === "";

  const banner = state.expired
    ? EXPIRED_NOTICE
    : state.session
      ? winBannerText(state.session)
      : "";
  bannerEl.textContent = banner;
  bannerEl.hidden = banner === "";
  restartButton.hidden = !state.expired;

  toastEl.textContent = state.toast;
  toastEl.hidden = state.toast === "";
  if (state.toast && !state.expired) {
    window.clearTimeout(toastTimer);
    toastTimer = window.setTimeout(() => {
      toastEl.hidden = true;
    }, 4000);
  }

  newGameButton.disabled = state.busy;
}

function syncStartOptions(vertices: string[]): void {
  const current = Array.from(startSelect.options).map((o) => o.value);
  if (current.length === vertices.length && current.every((v, i) => v === vertices[i])) {
    return;
  }
  const keep = startSelect.value;
  startSelect.innerHTML = vertices
    .map((v) => `<option value="${v}">${v}</option>`)
    .join("");
  if (vertices.includes(keep)) {
    startSelect.value = keep;
  }
}

function readSize(): number | undefined {
  const raw = sizeInput.value.trim();
  if (raw === "") return undefined;
  const n = Number(raw);
  return Number.isInteger(n) ? n : undefined;
}

function refreshPreview(): void {
  void controller.loadPreview(familySelect.value, readSize());
}

familySelect.addEventListener("change", refreshPreview);
sizeInput.addEventListener("change", refreshPreview);

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const req: NewGameRequest = {
    family: familySelect.value,
    n: readSize(),
    start: startSelect.value,
    engine_side: sideSelect.value as Player | "none",
  };
  void controller.newGame(req);
});

restartButton.addEventListener("click", () => {
  controller.restart();
  refreshPreview();
});

boardHost.addEventListener("click", (event) => {
  const target = (event.target as Element).closest("[data-vertex]");
  if (!target || target.getAttribute("data-move") !== "1") {
    return; // clicks outside the highlighted set are a no-op
  }
  const name = target.getAttribute("data-vertex");
  if (name) {
    void controller.clickVertex(name);
  }
});

refreshPreview();
