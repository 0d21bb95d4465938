// Affine math between wall pixels and viewport pixels. The mosaic is a pure
// scale of the wall (aspect preserved), so one number carries the mapping.

import type { Rect, WallInfo } from "./types.js";

export function canvasSize(wall: WallInfo): { w: number; h: number } {
  return { w: wall.cols * wall.screenWidth, h: wall.rows * wall.screenHeight };
}

/** Largest scale that fits the whole wall into the viewport. */
export function fitScale(wall: WallInfo, viewportW: number, viewportH: number): number {
  const { w, h } = canvasSize(wall);
  return Math.min(viewportW / w, viewportH / h);
}

export function wallToView(rect: Rect, scale: number): Rect {
  return {
    x: rect.x * scale,
    y: rect.y * scale,
    w: rect.w * scale,
    h: rect.h * scale,
  };
}

/** Pointer deltas in view pixels become integral wall-pixel deltas. */
export function viewDeltaToWall(dx: number, dy: number, scale: number): { dx: number; dy: number } {
  return { dx: Math.round(dx / scale), dy: Math.round(dy / scale) };
}

function snapCoord(value: number, step: number, count: number, threshold: number): number {
  for (let i = 0; i <= count; i++) {
    const edge = i * step;
    if (Math.abs(value - edge) <= threshold) return edge;
  }
  return value;
}

/** Snap a moved rect's edges to screen boundaries (wall space, default 8 px). */
export function snapMove(rect: Rect, wall: WallInfo, threshold = 8): Rect {
  let x = snapCoord(rect.x, wall.screenWidth, wall.cols, threshold);
  let y = snapCoord(rect.y, wall.screenHeight, wall.rows, threshold);
  if (x === rect.x) {
    const right = snapCoord(rect.x + rect.w, wall.screenWidth, wall.cols, threshold);
    if (right !== rect.x + rect.w) x = right - rect.w;
  }
  if (y === rect.y) {
    const bottom = snapCoord(rect.y + rect.h, wall.screenHeight, wall.rows, threshold);
    if (bottom !== rect.y + rect.h) y = bottom - rect.h;
  }
  return { ...rect, x, y };
}

/** Snap a resized rect's moving edges to screen boundaries. */
export function snapResize(rect: Rect, wall: WallInfo, threshold = 8): Rect {
  const right = snapCoord(rect.x + rect.w, wall.screenWidth, wall.cols, threshold);
  const bottom = snapCoord(rect.y + rect.h, wall.screenHeight, wall.rows, threshold);
  return { ...rect, w: Math.max(0, right - rect.x), h: Math.max(0, bottom - rect.y) };
}
