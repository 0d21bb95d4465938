"""Virtual tiled wall: screen grid, chromeless window regions, z-order.

All mutations go through one lock, so concurrent callers (orb dispatch
threads, the gateway session) serialize; snapshots are immutable values.
Coordinates are global pixels with the origin at the wall's top-left;
windows may extend off-canvas and get clipped.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass

Rect = tuple[int, int, int, int]  # x, y, w, h

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")


def parse_color(text: str) -> tuple[int, int, int]:
    if not _HEX_COLOR.match(text):
        raise ValueError(f"malformed color {text!r}, expected #RRGGBB")
    return tuple(int(text[i:i + 2], 16) for i in (1, 3, 5))


def color_hex(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def round_half_away(v: float) -> int:
    """Pixel rounding for geometry arriving as floats."""
    if v >= 0:
        return int(v + 0.5)
    return -int(-v + 0.5)


@dataclass(frozen=True)
class WallConfig:
    rows: int
    cols: int
    screen_width: int
    screen_height: int
    background: tuple[int, int, int] = (16, 16, 16)

    def __post_init__(self):
        for name in ("rows", "cols", "screen_width", "screen_height"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def canvas_width(self) -> int:
        return self.cols * self.screen_width

    @property
    def canvas_height(self) -> int:
        return self.rows * self.screen_height

    def screen_count(self) -> int:
        return self.rows * self.cols

    def screen_rect(self, index: int) -> Rect:
        """Global rect of a screen; screens are indexed row-major from 0."""
        if not 0 <= index < self.screen_count():
            raise ValueError(f"unknown screen index {index}")
        r, c = divmod(index, self.cols)
        return (c * self.screen_width, r * self.screen_height,
                self.screen_width, self.screen_height)

    @staticmethod
    def from_json(text: str) -> "WallConfig":
        doc = json.loads(text)
        return WallConfig(
            rows=doc["rows"],
            cols=doc["cols"],
            screen_width=doc["screenWidth"],
            screen_height=doc["screenHeight"],
            background=parse_color(doc.get("background", "#101010")),
        )


def intersect(a: Rect, b: Rect) -> Rect | None:
    x = max(a[0], b[0])
    y = max(a[1], b[1])
    x2 = min(a[0] + a[2], b[0] + b[2])
    y2 = min(a[1] + a[3], b[1] + b[3])
    if x2 <= x or y2 <= y:
        return None
    return (x, y, x2 - x, y2 - y)


def subtract(a: Rect, b: Rect) -> list[Rect]:
    """a minus b as up to four disjoint rects (guillotine split)."""
    inter = intersect(a, b)
    if inter is None:
        return [a]
    ax, ay, aw, ah = a
    ix, iy, iw, ih = inter
    parts = []
    if iy > ay:                                   # band above
        parts.append((ax, ay, aw, iy - ay))
    if iy + ih < ay + ah:                         # band below
        parts.append((ax, iy + ih, aw, ay + ah - iy - ih))
    if ix > ax:                                   # left of the hole
        parts.append((ax, iy, ix - ax, ih))
    if ix + iw < ax + aw:                         # right of the hole
        parts.append((ix + iw, iy, ax + aw - ix - iw, ih))
    return parts


def area(r: Rect) -> int:
    return r[2] * r[3]


def clip_to_screens(cfg: WallConfig, rect: Rect) -> list[tuple[int, Rect]]:
    """Decompose a global rect into disjoint screen-local rects.

    Off-canvas parts vanish; returned local coordinates are relative to each
    screen's top-left.
    """
    out: list[tuple[int, Rect]] = []
    for idx in range(cfg.screen_count()):
        sx, sy, sw, sh = cfg.screen_rect(idx)
        inter = intersect(rect, (sx, sy, sw, sh))
        if inter is not None:
            out.append((idx, (inter[0] - sx, inter[1] - sy, inter[2], inter[3])))
    return out


@dataclass(frozen=True)
class SlideFace:
    """What one slide shows: a full-bleed background and optional text blocks."""
    layout: int
    title: str
    body: str
    background: tuple[int, int, int]


@dataclass
class DeckContent:
    deck_title: str
    faces: list[SlideFace]
    index: int = 1          # 1-based current slide
    slideshow: bool = True

    def descriptor(self) -> dict:
        face = self.faces[self.index - 1]
        return {
            "kind": "deck",
            "deckTitle": self.deck_title,
            "slideCount": len(self.faces),
            "slideIndex": self.index,
            "slideshow": self.slideshow,
            "slide": {
                "layout": face.layout,
                "title": face.title,
                "body": face.body,
                "background": color_hex(face.background),
            },
        }


@dataclass
class TestCardContent:
    __test__ = False  # not a pytest class

    label: str = "test card"

    def descriptor(self) -> dict:
        return {"kind": "testcard", "label": self.label, "slideshow": False}


@dataclass
class _Window:
    window_id: int
    rect: Rect
    z: int
    visible: bool
    content: object


@dataclass(frozen=True)
class WindowSnap:
    window_id: int
    rect: Rect
    z: int
    visible: bool
    content: dict
    visible_rects: tuple[tuple[int, Rect], ...]


@dataclass(frozen=True)
class SceneSnapshot:
    config: WallConfig
    revision: int
    windows: tuple[WindowSnap, ...]  # sorted by z, bottom first


class WallModel:
    def __init__(self, cfg: WallConfig):
        self.cfg = cfg
        self._lock = threading.RLock()
        self._windows: dict[int, _Window] = {}
        self._revision = 0
        self._next_id = 1
        self._listeners: list = []

    # --- listeners (called synchronously under the lock, must not mutate) ---

    def add_listener(self, fn) -> None:
        with self._lock:
            self._listeners.append(fn)

    def remove_listener(self, fn) -> None:
        with self._lock:
            if fn in self._listeners:
                self._listeners.remove(fn)

    def _emit(self, kind: str, *payload) -> None:
        for fn in list(self._listeners):
            fn(kind, *payload)

    def _bump(self) -> None:
        self._revision += 1
        self._emit("revision", self._revision)

    # --- accessors ---

    @property
    def revision(self) -> int:
        with self._lock:
            return self._revision

    def has_window(self, window_id: int) -> bool:
        with self._lock:
            return window_id in self._windows

    def window_content(self, window_id: int):
        with self._lock:
            return self._require(window_id).content

    def _require(self, window_id: int) -> _Window:
        win = self._windows.get(window_id)
        if win is None:
            raise KeyError(f"unknown window: {window_id}")
        return win

    # --- mutations ---

    def place_window(self, x: int, y: int, w: int, h: int, content,
                     visible: bool = True) -> int:
        if w < 0 or h < 0:
            raise ValueError("window size must be >= 0")
        with self._lock:
            wid = self._next_id
            self._next_id += 1
            top = max((win.z for win in self._windows.values()), default=0) + 1
            self._windows[wid] = _Window(wid, (x, y, w, h), top, visible, content)
            self._bump()
            return wid

    def set_rect(self, window_id: int, x: int, y: int, w: int, h: int) -> None:
        if w < 0 or h < 0:
            raise ValueError("window size must be >= 0")
        with self._lock:
            win = self._require(window_id)
            win.rect = (x, y, w, h)
            self._bump()

    def set_geometry_field(self, window_id: int, field_name: str, value: int) -> None:
        """Single-field update; each call is an independent revision."""
        with self._lock:
            win = self._require(window_id)
            x, y, w, h = win.rect
            if field_name == "left":
                x = value
            elif field_name == "top":
                y = value
            elif field_name == "width":
                if value < 0:
                    raise ValueError("window size must be >= 0")
                w = value
            elif field_name == "height":
                if value < 0:
                    raise ValueError("window size must be >= 0")
                h = value
            else:
                raise ValueError(f"unknown geometry field {field_name!r}")
            win.rect = (x, y, w, h)
            self._bump()

    def geometry(self, window_id: int) -> Rect:
        with self._lock:
            return self._require(window_id).rect

    def set_z(self, window_id: int, z: int) -> None:
        """Move a window in the stack; other z values shift to stay unique."""
        with self._lock:
            win = self._require(window_id)
            if win.z == z:
                return
            for other in self._windows.values():
                if other is not win and other.z >= z:
                    other.z += 1
            win.z = z
            self._bump()

    def set_visible(self, window_id: int, visible: bool) -> None:
        with self._lock:
            win = self._require(window_id)
            if win.visible == visible:
                return
            win.visible = visible
            self._bump()

    def set_slide_index(self, window_id: int, index: int) -> bool:
        """Returns True when the index actually changed (event + revision)."""
        with self._lock:
            win = self._require(window_id)
            content = win.content
            if not isinstance(content, DeckContent):
                raise ValueError(f"window {window_id} is not a deck window")
            if not 1 <= index <= len(content.faces):
                raise IndexError(f"slide index {index} out of range")
            if content.index == index:
                return False
            content.index = index
            self._revision += 1
            self._emit("slide", window_id, index)
            self._emit("revision", self._revision)
            return True

    def slide_index(self, window_id: int) -> int:
        with self._lock:
            content = self._require(window_id).content
            if not isinstance(content, DeckContent):
                raise ValueError(f"window {window_id} is not a deck window")
            return content.index

    def slide_count(self, window_id: int) -> int:
        with self._lock:
            content = self._require(window_id).content
            if not isinstance(content, DeckContent):
                raise ValueError(f"window {window_id} is not a deck window")
            return len(content.faces)

    def remove_window(self, window_id: int) -> None:
        with self._lock:
            self._require(window_id)
            del self._windows[window_id]
            self._bump()

    # --- snapshots ---

    def snapshot(self) -> SceneSnapshot:
        with self._lock:
            ordered = sorted(self._windows.values(), key=lambda w: w.z)
            canvas = (0, 0, self.cfg.canvas_width, self.cfg.canvas_height)
            snaps: list[WindowSnap] = []
            for i, win in enumerate(ordered):
                pieces: list[Rect] = []
                if win.visible and win.rect[2] > 0 and win.rect[3] > 0:
                    start = intersect(win.rect, canvas)
                    pieces = [start] if start else []
                    for above in ordered[i + 1:]:
                        if not above.visible:
                            continue
                        pieces = [p for piece in pieces for p in subtract(piece, above.rect)]
                visible_rects = []
                for piece in pieces:
                    visible_rects.extend(clip_to_screens(self.cfg, piece))
                snaps.append(WindowSnap(
                    window_id=win.window_id,
                    rect=win.rect,
                    z=win.z,
                    visible=win.visible,
                    content=win.content.descriptor(),
                    visible_rects=tuple(visible_rects),
                ))
            return SceneSnapshot(self.cfg, self._revision, tuple(snaps))


def scene_doc(snap: SceneSnapshot) -> dict:
    return {
        "revision": snap.revision,
        "wall": {
            "rows": snap.config.rows,
            "cols": snap.config.cols,
            "screenWidth": snap.config.screen_width,
            "screenHeight": snap.config.screen_height,
            "background": color_hex(snap.config.background),
        },
        "windows": [
            {
                "id": w.window_id,
                "x": w.rect[0], "y": w.rect[1], "w": w.rect[2], "h": w.rect[3],
                "z": w.z,
                "visible": w.visible,
                "content": w.content,
                "visibleRects": [
                    {"screen": s, "x": r[0], "y": r[1], "w": r[2], "h": r[3]}
                    for s, r in w.visible_rects
                ],
            }
            for w in snap.windows
        ],
    }


def scene_json(snap: SceneSnapshot) -> str:
    return json.dumps(scene_doc(snap), sort_keys=True, indent=2) + "\n"
