"""Deterministic raster export of wall screens as binary PPM (P6).

Windows paint bottom-z first. Deck windows draw the current slide as a solid
background with title/body text blocks; test cards draw a checkerboard.
Nothing is ever painted outside a window's rect: no borders, no chrome.
"""

from __future__ import annotations

import numpy as np

from .model import SceneSnapshot, intersect, parse_color


def _luminance(rgb) -> float:
    r, g, b = rgb
    return 0.2126 * r + 0.7152 * g + 0.0722 * b


def _block_colors(bg) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    if _luminance(bg) < 128:
        return (230, 230, 230), (180, 180, 180)
    return (32, 32, 32), (72, 72, 72)


def _fill(img: np.ndarray, screen_rect, rect, color) -> None:
    """Paint rect (global coords) clipped to this screen."""
    inter = intersect(rect, screen_rect)
    if inter is None:
        return
    sx, sy = screen_rect[0], screen_rect[1]
    x, y, w, h = inter
    img[y - sy:y - sy + h, x - sx:x - sx + w] = color


def _paint_deck(img, screen_rect, rect, content: dict) -> None:
    slide = content["slide"]
    bg = parse_color(slide["background"])
    _fill(img, screen_rect, rect, bg)
    x, y, w, h = rect
    title_color, body_color = _block_colors(bg)
    if slide["title"]:
        block = (x + w * 5 // 100, y + h * 8 // 100, w * 90 // 100, h * 18 // 100)
        _fill(img, screen_rect, block, title_color)
    if slide["body"]:
        block = (x + w * 5 // 100, y + h * 32 // 100, w * 90 // 100, h * 58 // 100)
        _fill(img, screen_rect, block, body_color)


def _paint_testcard(img, screen_rect, rect) -> None:
    inter = intersect(rect, screen_rect)
    if inter is None:
        return
    sx, sy = screen_rect[0], screen_rect[1]
    x, y, w, h = inter
    ys = np.arange(y, y + h) - rect[1]
    xs = np.arange(x, x + w) - rect[0]
    checker = ((ys[:, None] // 16) + (xs[None, :] // 16)) % 2
    tile = np.where(checker[..., None] == 0, 96, 160).astype(np.uint8)
    img[y - sy:y - sy + h, x - sx:x - sx + w] = np.repeat(tile, 3, axis=2)


def render_screen(snap: SceneSnapshot, screen_index: int) -> np.ndarray:
    cfg = snap.config
    sx, sy, sw, sh = cfg.screen_rect(screen_index)
    img = np.empty((sh, sw, 3), dtype=np.uint8)
    img[:] = cfg.background
    for win in snap.windows:  # already bottom-z first
        if not win.visible or win.rect[2] <= 0 or win.rect[3] <= 0:
            continue
        if win.content.get("kind") == "deck":
            _paint_deck(img, (sx, sy, sw, sh), win.rect, win.content)
        else:
            _paint_testcard(img, (sx, sy, sw, sh), win.rect)
    return img


def to_ppm(img: np.ndarray) -> bytes:
    h, w, _ = img.shape
    return b"P6\n%d %d\n255\n" % (w, h) + img.tobytes()


def from_ppm(data: bytes) -> np.ndarray:
    if not data.startswith(b"P6"):
        raise ValueError("not a binary PPM")
    parts = data.split(b"\n", 3)
    w, h = (int(t) for t in parts[1].split())
    maxval = int(parts[2])
    if maxval != 255:
        raise ValueError("unsupported maxval")
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)


def render_ppm(snap: SceneSnapshot, screen_index: int) -> bytes:
    return to_ppm(render_screen(snap, screen_index))
