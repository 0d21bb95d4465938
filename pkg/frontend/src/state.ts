// Console view model. Pure update functions so the logic is testable
// without a DOM; rendering consumes the state read-only.

import type { Rect, WallStateDoc } from "./types.js";

export interface UiState {
  doc: WallStateDoc | null;
  lastRevision: number;
  selected: number | null;
  connected: boolean;
  /** optimistic geometry per window, awaiting the next pushed revision */
  pending: Map<number, Rect>;
}

export function initialState(): UiState {
  return { doc: null, lastRevision: -1, selected: null, connected: false, pending: new Map() };
}

/** Apply a pushed document; stale revisions never overwrite newer state. */
export function applyDoc(state: UiState, doc: WallStateDoc): UiState {
  if (doc.revision <= state.lastRevision) return state;
  const pending = new Map(state.pending);
  for (const [id, rect] of pending) {
    const win = doc.windows.find((w) => w.id === id);
    if (!win || (win.x === rect.x && win.y === rect.y && win.w === rect.w && win.h === rect.h)) {
      pending.delete(id); // reconciled (or gone)
    }
  }
  const selected =
    state.selected !== null && doc.windows.some((w) => w.id === state.selected)
      ? state.selected
      : null;
  return { ...state, doc, lastRevision: doc.revision, selected, pending };
}

export function applyOptimistic(state: UiState, windowId: number, rect: Rect): UiState {
  const pending = new Map(state.pending);
  pending.set(windowId, rect);
  return { ...state, pending };
}

export function select(state: UiState, windowId: number | null): UiState {
  return { ...state, selected: windowId };
}

export function setConnected(state: UiState, connected: boolean): UiState {
  return { ...state, connected };
}

/** Geometry to draw for a window: optimistic if a PATCH is in flight. */
export function effectiveRect(state: UiState, windowId: number): Rect | null {
  const pending = state.pending.get(windowId);
  if (pending) return pending;
  const win = state.doc?.windows.find((w) => w.id === windowId);
  return win ? { x: win.x, y: win.y, w: win.w, h: win.h } : null;
}
