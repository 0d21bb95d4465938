import { Api, GatewayError } from "./api.js";
import { beginDrag, dragUpdate, endDrag, type DragSession } from "./drag.js";
import { connectEvents } from "./sse.js";
import { fitScale } from "./scale.js";
import {
  applyDoc,
  applyOptimistic,
  initialState,
  select,
  setConnected,
  type UiState,
} from "./state.js";
import { renderMosaic, renderStatus } from "./render.js";

const $ = <T extends HTMLElement>(sel: string): T => {
  const el = document.querySelector<T>(sel);
  if (!el) throw new Error(`missing element ${sel}`);
  return el;
};

let state: UiState = initialState();
let api = new Api();
let scale = 0.1;
let snapEnabled = true;
let drag: DragSession | null = null;

const mosaic = $("#mosaic");
const banner = $("#banner");
const revisionEl = $("#revision");
const toasts = $("#toasts");

function toast(text: string): void {
  const el = document.createElement("div");
  el.className = "toast";
  el.textContent = text;
  el.addEventListener("click", () => el.remove());
  toasts.appendChild(el);
  setTimeout(() => el.remove(), 6000);
}

function reportError(e: unknown): void {
  if (e instanceof GatewayError) toast(`${e.code}: ${e.message}`);
  else toast(String(e));
}

function update(next: UiState): void {
  state = next;
  if (state.doc) {
    const holder = $("#mosaic-holder");
    scale = fitScale(state.doc.wall, holder.clientWidth - 16, holder.clientHeight - 16);
    renderMosaic(mosaic, state, scale, cardHandlers);
  }
  renderStatus(banner, revisionEl, state);
  const hasSelection = state.selected !== null;
  document
    .querySelectorAll<HTMLButtonElement>("[data-needs-selection]")
    .forEach((b) => (b.disabled = !hasSelection));
}

const cardHandlers = {
  onSelect(windowId: number): void {
    update(select(state, windowId));
  },
  onDragStart(ev: PointerEvent, windowId: number, resize: boolean): void {
    if (!state.doc) return;
    const win = state.doc.windows.find((w) => w.id === windowId);
    if (!win) return;
    ev.preventDefault();
    drag = beginDrag(
      resize ? "resize" : "move",
      windowId,
      { x: win.x, y: win.y, w: win.w, h: win.h },
      ev.clientX,
      ev.clientY,
      scale,
      snapEnabled,
      state.doc.wall,
    );
  },
};

window.addEventListener("pointermove", (ev) => {
  if (!drag) return;
  const rect = dragUpdate(drag, ev.clientX, ev.clientY);
  update(applyOptimistic(state, drag.windowId, rect));
});

window.addEventListener("pointerup", (ev) => {
  if (!drag) return;
  const session = drag;
  drag = null;
  const rect = endDrag(session, ev.clientX, ev.clientY);
  if (!rect) return;
  update(applyOptimistic(state, session.windowId, rect));
  api.patchWindow(session.windowId, rect).catch(reportError); // the one PATCH per drag
});

window.addEventListener("keydown", (ev) => {
  if (state.selected === null) return;
  if (ev.key === "ArrowRight") transport("next");
  if (ev.key === "ArrowLeft") transport("prev");
});

function transport(verb: "next" | "prev" | "goto", index?: number): void {
  if (state.selected === null) return;
  api.transport(state.selected, verb, index).catch(reportError);
}

function wireToolbar(): void {
  $("#btn-prev").addEventListener("click", () => transport("prev"));
  $("#btn-next").addEventListener("click", () => transport("next"));
  $("#btn-goto").addEventListener("click", () => {
    const raw = prompt("Go to slide:");
    if (raw) transport("goto", Number(raw));
  });
  $("#btn-exit").addEventListener("click", () => {
    if (state.selected === null) return;
    api.exitShow(state.selected).catch(reportError);
  });
  const snapBox = $<HTMLInputElement>("#snap-toggle");
  snapBox.addEventListener("change", () => (snapEnabled = snapBox.checked));

  const dialog = $<HTMLDialogElement>("#launch-dialog");
  $("#btn-launch").addEventListener("click", async () => {
    try {
      const decks = await api.decks();
      const sel = $<HTMLSelectElement>("#launch-deck");
      sel.innerHTML = "";
      for (const d of decks) {
        const opt = document.createElement("option");
        opt.value = d;
        opt.textContent = d;
        sel.appendChild(opt);
      }
      if (state.doc) {
        $<HTMLInputElement>("#launch-w").value = String(state.doc.wall.screenWidth);
        $<HTMLInputElement>("#launch-h").value = String(state.doc.wall.screenHeight);
      }
      dialog.showModal();
    } catch (e) {
      reportError(e);
    }
  });
  $("#launch-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    dialog.close();
    const num = (sel: string) => Number($<HTMLInputElement>(sel).value || "0");
    api
      .launch($<HTMLSelectElement>("#launch-deck").value, {
        x: num("#launch-x"),
        y: num("#launch-y"),
        w: num("#launch-w"),
        h: num("#launch-h"),
      })
      .then((r) => update(select(state, r.windowId)))
      .catch(reportError);
  });
  $("#launch-cancel").addEventListener("click", () => dialog.close());
}

async function boot(): Promise<void> {
  let token: string | null = localStorage.getItem("sume-token");
  try {
    const config = await new Api("", token).config();
    if (config.authRequired && !token) {
      token = prompt("Gateway token:");
      if (token) localStorage.setItem("sume-token", token);
    }
  } catch {
    // config endpoint unreachable; the banner will show once SSE fails too
  }
  api = new Api("", token);
  connectEvents(
    "",
    (doc) => update(applyDoc(state, doc)),
    (connected) => update(setConnected(state, connected)),
    token,
  );
  wireToolbar();
  window.addEventListener("resize", () => update(state));
}

boot();
