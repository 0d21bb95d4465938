import random

import numpy as np
import pytest

from sume.wall import (
    DeckContent,
    SlideFace,
    TestCardContent,
    WallConfig,
    WallModel,
    area,
    clip_to_screens,
    from_ppm,
    render_ppm,
    render_screen,
    round_half_away,
    scene_json,
    subtract,
)


def deck(n=3, bg=(32, 64, 128)):
    faces = [SlideFace(1, f"Slide {i}", "body text", bg) for i in range(1, n + 1)]
    return DeckContent("Demo", faces)


def plain_deck(bg):
    # blank slides paint only the background color, easier to assert on
    return DeckContent("Plain", [SlideFace(12, "", "", bg)])


def test_canvas_arithmetic():
    cfg = WallConfig(2, 2, 1920, 1080)
    assert cfg.canvas_width == 3840
    assert cfg.canvas_height == 2160
    cfg1 = WallConfig(1, 1, 800, 600)
    assert (cfg1.canvas_width, cfg1.canvas_height) == (800, 600)


def test_zero_rows_rejected():
    with pytest.raises(ValueError):
        WallConfig(0, 2, 1920, 1080)
    with pytest.raises(ValueError):
        WallConfig(1, 1, 1920, -5)


def test_fresh_wall_revision_zero():
    wall = WallModel(WallConfig(1, 1, 800, 600))
    assert wall.revision == 0
    assert wall.snapshot().windows == ()


def test_rounding_rule():
    assert round_half_away(50.4) == 50
    assert round_half_away(50.5) == 51
    assert round_half_away(-10.5) == -11
    assert round_half_away(-10.4) == -10


# --- clip_to_screens ---


def test_clip_spans_two_screens():
    cfg = WallConfig(2, 2, 1920, 1080)
    got = clip_to_screens(cfg, (1800, 100, 240, 200))
    assert got == [(0, (1800, 100, 120, 200)), (1, (0, 100, 120, 200))]


def test_clip_inside_single_screen():
    cfg = WallConfig(2, 2, 1920, 1080)
    assert clip_to_screens(cfg, (10, 20, 100, 50)) == [(0, (10, 20, 100, 50))]


def test_clip_off_canvas():
    cfg = WallConfig(2, 2, 1920, 1080)
    assert clip_to_screens(cfg, (-50, -50, 10, 10)) == []


def pixel_oracle(cfg, rect):
    """Brute-force per-pixel membership map of rect over the whole canvas."""
    grid = np.zeros((cfg.canvas_height, cfg.canvas_width), dtype=bool)
    x, y, w, h = rect
    x0, y0 = max(x, 0), max(y, 0)
    x1, y1 = min(x + w, cfg.canvas_width), min(y + h, cfg.canvas_height)
    if x1 > x0 and y1 > y0:
        grid[y0:y1, x0:x1] = True
    return grid


@pytest.mark.parametrize("seed", range(30))
def test_clip_matches_pixel_oracle(seed):
    rng = random.Random(seed)
    cfg = WallConfig(rng.randint(1, 4), rng.randint(1, 4),
                     rng.randint(1, 60), rng.randint(1, 60))
    rect = (rng.randint(-40, cfg.canvas_width + 10), rng.randint(-40, cfg.canvas_height + 10),
            rng.randint(0, 80), rng.randint(0, 80))
    pieces = clip_to_screens(cfg, rect)
    expect = pixel_oracle(cfg, rect)
    got = np.zeros_like(expect)
    for idx, (lx, ly, lw, lh) in pieces:
        sx, sy, _, _ = cfg.screen_rect(idx)
        block = got[sy + ly:sy + ly + lh, sx + lx:sx + lx + lw]
        assert not block.any(), "pieces overlap"
        block[:] = True
    assert (got == expect).all()


def test_subtract_disjoint_and_conserving():
    rng = random.Random(7)
    for _ in range(200):
        a = (rng.randint(-10, 20), rng.randint(-10, 20), rng.randint(1, 15), rng.randint(1, 15))
        b = (rng.randint(-10, 20), rng.randint(-10, 20), rng.randint(0, 15), rng.randint(0, 15))
        parts = subtract(a, b)
        from sume.wall import intersect
        inter = intersect(a, b)
        inter_area = area(inter) if inter else 0
        assert sum(area(p) for p in parts) == area(a) - inter_area
        for i, p in enumerate(parts):
            assert intersect(p, b) is None
            for q in parts[i + 1:]:
                assert intersect(p, q) is None


# --- window management ---


def test_place_window_listing_geometry():
    wall = WallModel(WallConfig(2, 2, 1920, 1080))
    wid = wall.place_window(300, 200, 50, 100, deck())
    snap = wall.snapshot()
    assert snap.windows[0].rect == (300, 200, 50, 100)
    assert snap.windows[0].window_id == wid


def test_same_geometry_still_bumps_revision():
    wall = WallModel(WallConfig(1, 1, 800, 600))
    wid = wall.place_window(10, 10, 100, 100, deck())
    before = wall.revision
    wall.set_rect(wid, 10, 10, 100, 100)
    assert wall.revision == before + 1
    assert wall.geometry(wid) == (10, 10, 100, 100)


def test_zero_width_window_contributes_no_pixels():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    wid = wall.place_window(10, 10, 0, 50, deck())
    snap = wall.snapshot()
    assert snap.windows[0].visible_rects == ()
    img = render_screen(snap, 0)
    assert (img == np.array(wall.cfg.background, dtype=np.uint8)).all()
    assert wall.has_window(wid)


def test_unknown_window_rejected():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    with pytest.raises(KeyError):
        wall.set_rect(99, 0, 0, 10, 10)
    with pytest.raises(ValueError):
        wall.place_window(0, 0, -1, 10, deck())


def test_new_windows_take_top_z():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    a = wall.place_window(0, 0, 10, 10, deck())
    b = wall.place_window(0, 0, 10, 10, deck())
    snap = wall.snapshot()
    assert [w.window_id for w in snap.windows] == [a, b]
    assert snap.windows[0].z < snap.windows[1].z


def test_set_z_keeps_uniqueness():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    a = wall.place_window(0, 0, 10, 10, deck())
    b = wall.place_window(0, 0, 10, 10, deck())
    c = wall.place_window(0, 0, 10, 10, deck())
    wall.set_z(c, wall.snapshot().windows[0].z)  # move c to bottom
    snap = wall.snapshot()
    zs = [w.z for w in snap.windows]
    assert len(set(zs)) == 3
    assert [w.window_id for w in snap.windows] == [c, a, b]


# --- occlusion and conservation ---


def test_occlusion_shrinks_lower_window():
    wall = WallModel(WallConfig(1, 1, 200, 200))
    lower = wall.place_window(0, 0, 100, 100, deck())
    wall.place_window(50, 50, 100, 100, deck())
    snap = wall.snapshot()
    lower_snap = next(w for w in snap.windows if w.window_id == lower)
    visible_area = sum(r[2] * r[3] for _, r in lower_snap.visible_rects)
    assert visible_area == 100 * 100 - 50 * 50


@pytest.mark.parametrize("seed", range(15))
def test_conservation_against_painted_oracle(seed):
    rng = random.Random(seed)
    cfg = WallConfig(rng.randint(1, 3), rng.randint(1, 3), 50, 40)
    wall = WallModel(cfg)
    ids = []
    for _ in range(rng.randint(1, 6)):
        ids.append(wall.place_window(
            rng.randint(-30, cfg.canvas_width), rng.randint(-30, cfg.canvas_height),
            rng.randint(0, 60), rng.randint(0, 60), deck()))
    snap = wall.snapshot()

    # independent oracle: paint ids top-down on a canvas grid
    owner = np.zeros((cfg.canvas_height, cfg.canvas_width), dtype=int)
    for w in snap.windows:  # bottom first, later paints overwrite
        x, y, ww, hh = w.rect
        x0, y0 = max(x, 0), max(y, 0)
        x1 = min(x + ww, cfg.canvas_width)
        y1 = min(y + hh, cfg.canvas_height)
        if x1 > x0 and y1 > y0:
            owner[y0:y1, x0:x1] = w.window_id

    for w in snap.windows:
        painted = int((owner == w.window_id).sum())
        decomposed = sum(r[2] * r[3] for _, r in w.visible_rects)
        assert decomposed == painted
        # conservation: visible + occluded + off-canvas = total
        from sume.wall import intersect
        on_canvas = intersect(w.rect, (0, 0, cfg.canvas_width, cfg.canvas_height))
        on_canvas_area = area(on_canvas) if on_canvas else 0
        occluded = on_canvas_area - decomposed
        off_canvas = area(w.rect) - on_canvas_area
        assert decomposed + occluded + off_canvas == area(w.rect)
        assert occluded >= 0


# --- revision and snapshot determinism ---


def test_revision_monotone_and_snapshot_deterministic():
    wall = WallModel(WallConfig(2, 1, 100, 100))
    revs = [wall.revision]
    wid = wall.place_window(5, 5, 50, 50, deck())
    revs.append(wall.revision)
    wall.set_geometry_field(wid, "left", 20)
    revs.append(wall.revision)
    wall.set_slide_index(wid, 2)
    revs.append(wall.revision)
    assert revs == sorted(revs) and len(set(revs)) == len(revs)
    assert scene_json(wall.snapshot()) == scene_json(wall.snapshot())


def test_ineffective_slide_change_no_revision():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    wid = wall.place_window(0, 0, 10, 10, deck())
    wall.set_slide_index(wid, 2)
    before = wall.revision
    assert wall.set_slide_index(wid, 2) is False
    assert wall.revision == before


def test_wall_events_emitted_in_order():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    events = []
    wall.add_listener(lambda kind, *p: events.append((kind, p)))
    wid = wall.place_window(0, 0, 10, 10, deck())
    wall.set_slide_index(wid, 3)
    kinds = [k for k, _ in events]
    assert kinds == ["revision", "slide", "revision"]
    assert events[1][1] == (wid, 3)


# --- raster ---


def test_raster_deterministic_and_chromeless():
    wall = WallModel(WallConfig(2, 2, 96, 54))
    wall.place_window(30, 20, 50, 40, deck())
    wall.place_window(90, 40, 30, 30, TestCardContent())
    snap = wall.snapshot()
    for idx in range(4):
        once = render_ppm(snap, idx)
        twice = render_ppm(snap, idx)
        assert once == twice
        img = from_ppm(once)
        # mask out declared window rects; the rest must be pure background
        mask = np.ones(img.shape[:2], dtype=bool)
        sx, sy, sw, sh = wall.cfg.screen_rect(idx)
        for w in snap.windows:
            x, y, ww, hh = w.rect
            x0, y0 = max(x - sx, 0), max(y - sy, 0)
            x1, y1 = min(x + ww - sx, sw), min(y + hh - sy, sh)
            if x1 > x0 and y1 > y0:
                mask[y0:y1, x0:x1] = False
        bg = np.array(wall.cfg.background, dtype=np.uint8)
        assert (img[mask] == bg).all()


def test_raster_occlusion():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    wall.place_window(0, 0, 60, 60, plain_deck((255, 0, 0)))
    wall.place_window(30, 30, 60, 60, plain_deck((0, 0, 255)))
    img = render_screen(wall.snapshot(), 0)
    assert (img[40, 40] == (0, 0, 255)).all()   # overlap shows the upper window
    assert (img[5, 5] == (255, 0, 0)).all()


def test_hidden_window_not_rendered():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    wid = wall.place_window(0, 0, 60, 60, plain_deck((255, 0, 0)))
    wall.set_visible(wid, False)
    img = render_screen(wall.snapshot(), 0)
    assert (img == np.array(wall.cfg.background, dtype=np.uint8)).all()


def test_render_unknown_screen():
    wall = WallModel(WallConfig(1, 1, 100, 100))
    with pytest.raises(ValueError):
        render_screen(wall.snapshot(), 5)
