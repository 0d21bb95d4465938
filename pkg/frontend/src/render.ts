// DOM mosaic. Rendering is idempotent: cards are keyed by window id and
// updated in place, so replaying the same document leaves the DOM as is.

import { effectiveRect, type UiState } from "./state.js";
import { canvasSize, wallToView } from "./scale.js";
import type { WindowDoc } from "./types.js";

export interface CardHandlers {
  onSelect(windowId: number): void;
  onDragStart(ev: PointerEvent, windowId: number, resize: boolean): void;
}

function contentLabel(win: WindowDoc): string {
  const c = win.content;
  if (c.kind === "deck") {
    const title = c.deckTitle || "untitled deck";
    return c.slideshow ? title : `${title} (preview)`;
  }
  return c.label ?? c.kind;
}

function slidePosition(win: WindowDoc): string {
  const c = win.content;
  return c.kind === "deck" ? `${c.slideIndex}/${c.slideCount}` : "";
}

export function renderMosaic(
  container: HTMLElement,
  state: UiState,
  scale: number,
  handlers: CardHandlers,
): void {
  const doc = state.doc;
  if (!doc) return;
  const { w, h } = canvasSize(doc.wall);
  container.style.width = `${w * scale}px`;
  container.style.height = `${h * scale}px`;

  // screen cells with cosmetic bezel lines
  let grid = container.querySelector<HTMLElement>(".screen-grid");
  if (!grid) {
    grid = document.createElement("div");
    grid.className = "screen-grid";
    container.appendChild(grid);
  }
  const wanted = doc.wall.rows * doc.wall.cols;
  while (grid.children.length > wanted) grid.lastElementChild!.remove();
  while (grid.children.length < wanted) {
    const cell = document.createElement("div");
    cell.className = "screen-cell";
    grid.appendChild(cell);
  }
  grid.style.gridTemplateColumns = `repeat(${doc.wall.cols}, 1fr)`;
  grid.style.gridTemplateRows = `repeat(${doc.wall.rows}, 1fr)`;
  Array.from(grid.children).forEach((cell, i) => {
    (cell as HTMLElement).dataset.screen = String(i);
  });

  const seen = new Set<string>();
  const ordered = [...doc.windows].sort((a, b) => a.z - b.z);
  ordered.forEach((win, stack) => {
    const key = `win-${win.id}`;
    seen.add(key);
    let card = container.querySelector<HTMLElement>(`[data-key="${key}"]`);
    if (!card) {
      card = document.createElement("div");
      card.className = "window-card";
      card.dataset.key = key;
      card.innerHTML =
        '<div class="card-title"></div><div class="card-pos"></div><div class="card-grip"></div>';
      card.addEventListener("pointerdown", (ev) => {
        const id = Number(card!.dataset.windowId);
        handlers.onSelect(id);
        const resize = (ev.target as HTMLElement).classList.contains("card-grip");
        handlers.onDragStart(ev, id, resize);
      });
      container.appendChild(card);
    }
    card.dataset.windowId = String(win.id);
    const rect = effectiveRect(state, win.id) ?? win;
    const view = wallToView(rect, scale);
    card.style.left = `${view.x}px`;
    card.style.top = `${view.y}px`;
    card.style.width = `${view.w}px`;
    card.style.height = `${view.h}px`;
    card.style.zIndex = String(10 + stack);
    card.classList.toggle("selected", state.selected === win.id);
    card.classList.toggle("hidden-window", !win.visible);
    const bg = win.content.slide?.background;
    if (bg) card.style.background = bg;
    card.querySelector<HTMLElement>(".card-title")!.textContent = contentLabel(win);
    card.querySelector<HTMLElement>(".card-pos")!.textContent = slidePosition(win);
  });

  container.querySelectorAll<HTMLElement>(".window-card").forEach((card) => {
    if (!seen.has(card.dataset.key!)) card.remove();
  });
}

export function renderStatus(
  banner: HTMLElement,
  revisionEl: HTMLElement,
  state: UiState,
): void {
  banner.hidden = state.connected;
  revisionEl.textContent = state.doc ? `revision ${state.doc.revision}` : "no state";
}
