"""Open deck file format (.deck): a JSON document describing slides.

    {
      "title": "Quarterly review",
      "slides": [
        {"layout": "ppLayoutTitle", "title": "Welcome", "body": "", "background": "#1b3a6b"}
      ]
    }

Layout may be a known name or its numeric value. Background is optional and
defaults per layout. Slide indices are 1-based on the automation surface.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..wall.model import parse_color

PP_LAYOUT_TITLE = 1
PP_LAYOUT_TEXT = 2
PP_LAYOUT_BLANK = 12

LAYOUT_NAMES = {
    "ppLayoutTitle": PP_LAYOUT_TITLE,
    "ppLayoutText": PP_LAYOUT_TEXT,
    "ppLayoutBlank": PP_LAYOUT_BLANK,
}
LAYOUT_VALUES = set(LAYOUT_NAMES.values())

DEFAULT_BACKGROUNDS = {
    PP_LAYOUT_TITLE: (27, 58, 107),
    PP_LAYOUT_TEXT: (240, 240, 236),
    PP_LAYOUT_BLANK: (0, 0, 0),
}

PP_WINDOW_NORMAL = 1
PP_WINDOW_MINIMIZED = 2
PP_WINDOW_MAXIMIZED = 3


class DeckError(ValueError):
    """Unreadable or invalid deck file."""


@dataclass(frozen=True)
class DeckSlide:
    layout: int
    title: str = ""
    body: str = ""
    background: tuple[int, int, int] | None = None

    @property
    def effective_background(self) -> tuple[int, int, int]:
        if self.background is not None:
            return self.background
        return DEFAULT_BACKGROUNDS[self.layout]


@dataclass
class Deck:
    title: str
    slides: list[DeckSlide]


def _parse_layout(value, where: str) -> int:
    if isinstance(value, str):
        if value not in LAYOUT_NAMES:
            raise DeckError(f"{where}: unknown layout name {value!r}")
        return LAYOUT_NAMES[value]
    if isinstance(value, int) and not isinstance(value, bool):
        if value not in LAYOUT_VALUES:
            raise DeckError(f"{where}: unknown layout value {value}")
        return value
    raise DeckError(f"{where}: layout must be a name or integer")


def parse_deck(text: str) -> Deck:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DeckError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise DeckError("deck document must be an object")
    title = doc.get("title", "")
    if not isinstance(title, str):
        raise DeckError("title must be a string")
    raw_slides = doc.get("slides", [])
    if not isinstance(raw_slides, list):
        raise DeckError("slides must be a list")
    slides: list[DeckSlide] = []
    for i, raw in enumerate(raw_slides, start=1):
        where = f"slides[{i}]"
        if not isinstance(raw, dict):
            raise DeckError(f"{where}: slide must be an object")
        layout = _parse_layout(raw.get("layout", "ppLayoutBlank"), where)
        slide_title = raw.get("title", "")
        body = raw.get("body", "")
        if not isinstance(slide_title, str) or not isinstance(body, str):
            raise DeckError(f"{where}: title and body must be strings")
        background = None
        if "background" in raw:
            if not isinstance(raw["background"], str):
                raise DeckError(f"{where}: background must be a string")
            try:
                background = parse_color(raw["background"])
            except ValueError as e:
                raise DeckError(f"{where}: {e}") from None
        slides.append(DeckSlide(layout, slide_title, body, background))
    return Deck(title=title, slides=slides)


def load_deck(path: str | Path) -> Deck:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise DeckError(f"cannot read {p}: {e.strerror or e}") from None
    try:
        return parse_deck(text)
    except DeckError as e:
        raise DeckError(f"{p.name}: {e}") from None


def blank_slide(layout: int) -> DeckSlide:
    """What Slides.Add inserts: layout default background, empty text."""
    if layout not in LAYOUT_VALUES:
        raise DeckError(f"unknown layout value {layout}")
    return DeckSlide(layout)
