"""Slideshow automation components and the open deck format."""

import importlib.resources

from .components import (
    Application,
    Component,
    Presentation,
    Presentations,
    ServerContext,
    Slide,
    Slides,
    SlideShowSettings,
    SlideShowView,
    SlideShowWindow,
    WallControl,
    component_factories,
)
from .deck import (
    LAYOUT_NAMES,
    PP_LAYOUT_BLANK,
    PP_LAYOUT_TEXT,
    PP_LAYOUT_TITLE,
    PP_WINDOW_MAXIMIZED,
    PP_WINDOW_MINIMIZED,
    PP_WINDOW_NORMAL,
    Deck,
    DeckError,
    DeckSlide,
    blank_slide,
    load_deck,
    parse_deck,
)


def presenter_idl_text() -> str:
    """The .sidl source the videoserver boots from."""
    return (importlib.resources.files(__package__) / "presenter.sidl").read_text(encoding="utf-8")


__all__ = [
    "Application",
    "Component",
    "Deck",
    "DeckError",
    "DeckSlide",
    "LAYOUT_NAMES",
    "PP_LAYOUT_BLANK",
    "PP_LAYOUT_TEXT",
    "PP_LAYOUT_TITLE",
    "PP_WINDOW_MAXIMIZED",
    "PP_WINDOW_MINIMIZED",
    "PP_WINDOW_NORMAL",
    "Presentation",
    "Presentations",
    "ServerContext",
    "Slide",
    "Slides",
    "SlideShowSettings",
    "SlideShowView",
    "SlideShowWindow",
    "WallControl",
    "blank_slide",
    "component_factories",
    "load_deck",
    "parse_deck",
    "presenter_idl_text",
]
