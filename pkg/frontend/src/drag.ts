// Drag and resize sessions over window cards. All geometry is computed in
// wall pixels; exactly one PATCH payload comes out of a session, on finish.

import { snapMove, snapResize, viewDeltaToWall } from "./scale.js";
import type { Rect, WallInfo } from "./types.js";

export type DragMode = "move" | "resize";

export interface DragSession {
  mode: DragMode;
  windowId: number;
  startRect: Rect;
  originX: number; // pointer, view px
  originY: number;
  scale: number;
  snap: boolean;
  wall: WallInfo;
  moved: boolean;
}

export function beginDrag(
  mode: DragMode,
  windowId: number,
  rect: Rect,
  pointerX: number,
  pointerY: number,
  scale: number,
  snap: boolean,
  wall: WallInfo,
): DragSession {
  return {
    mode,
    windowId,
    startRect: { ...rect },
    originX: pointerX,
    originY: pointerY,
    scale,
    snap,
    wall,
    moved: false,
  };
}

/** Wall-space rect for the current pointer position. */
export function dragRect(s: DragSession, pointerX: number, pointerY: number): Rect {
  const { dx, dy } = viewDeltaToWall(pointerX - s.originX, pointerY - s.originY, s.scale);
  if (s.mode === "move") {
    const rect = { ...s.startRect, x: s.startRect.x + dx, y: s.startRect.y + dy };
    return s.snap ? snapMove(rect, s.wall) : rect;
  }
  const rect = {
    ...s.startRect,
    w: Math.max(0, s.startRect.w + dx),
    h: Math.max(0, s.startRect.h + dy),
  };
  return s.snap ? snapResize(rect, s.wall) : rect;
}

export function dragUpdate(s: DragSession, pointerX: number, pointerY: number): Rect {
  if (pointerX !== s.originX || pointerY !== s.originY) s.moved = true;
  return dragRect(s, pointerX, pointerY);
}

/** Final geometry for the one debounced PATCH; null when nothing changed. */
export function endDrag(s: DragSession, pointerX: number, pointerY: number): Rect | null {
  const rect = dragUpdate(s, pointerX, pointerY);
  if (!s.moved) return null;
  const a = s.startRect;
  if (rect.x === a.x && rect.y === a.y && rect.w === a.w && rect.h === a.h) return null;
  return rect;
}
