"""Wall compositor: tiled geometry, chromeless windows, snapshots, raster export."""

from .model import (
    DeckContent,
    Rect,
    SceneSnapshot,
    SlideFace,
    TestCardContent,
    WallConfig,
    WallModel,
    WindowSnap,
    area,
    clip_to_screens,
    color_hex,
    intersect,
    parse_color,
    round_half_away,
    scene_doc,
    scene_json,
    subtract,
)
from .raster import from_ppm, render_ppm, render_screen, to_ppm

__all__ = [
    "DeckContent",
    "Rect",
    "SceneSnapshot",
    "SlideFace",
    "TestCardContent",
    "WallConfig",
    "WallModel",
    "WindowSnap",
    "area",
    "clip_to_screens",
    "color_hex",
    "from_ppm",
    "intersect",
    "parse_color",
    "render_ppm",
    "render_screen",
    "round_half_away",
    "scene_doc",
    "scene_json",
    "subtract",
    "to_ppm",
]
