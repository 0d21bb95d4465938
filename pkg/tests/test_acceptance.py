"""Acceptance suite: one test per release criterion, at its stated tolerance.

conftest prints one [acceptance] PASS/FAIL line per test here.
"""

import json
import random
import socket
import struct
import subprocess
import sys
import threading
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import make_deck_file
from genlib import random_library
from genvalues import R4_EDGE_BITS, R8_EDGE_BITS, random_value
from sume.idl import emit_idl, parse_idl
from sume.orb import BridgeFault, connect, wire
from sume.presenter import presenter_idl_text
from sume.sdk import open_application, open_wall
from sume.server_main import build_server
from sume.wall.model import WallConfig, clip_to_screens
from sume.wall.raster import from_ppm

REPO = Path(__file__).resolve().parent.parent


def run_cli(port, *args, timeout=30):
    return subprocess.run(
        [sys.executable, "-m", "sume.cli", "--endpoint", f"127.0.0.1:{port}", *args],
        capture_output=True, text=True, timeout=timeout)


@pytest.fixture
def full_wall_server():
    cfg = WallConfig.from_json((REPO / "configs" / "wall-2x2.json").read_text())
    srv = build_server(cfg, REPO / "content", port=0)
    srv.start()
    yield srv
    srv.stop()


def test_show_replay_snapshot(full_wall_server, tmp_path):
    """show at (300,200,50,100) on a 2x2@1920x1080 wall; snapshot shows exactly
    one slideshow window there at slide 1 with zero chrome pixels; < 5 s."""
    port = full_wall_server.port
    started = time.monotonic()
    proc = run_cli(port, "--porcelain", "show", "presentation.deck",
                   "--x", "300", "--y", "200", "--w", "50", "--h", "100")
    elapsed = time.monotonic() - started
    assert proc.returncode == 0, proc.stderr
    assert elapsed < 5.0, f"show took {elapsed:.2f}s"

    assert run_cli(port, "snapshot", "-o", str(tmp_path)).returncode == 0
    [rev_dir] = list(tmp_path.glob("rev-*"))
    scene = json.loads((rev_dir / "scene.json").read_text())

    shows = [w for w in scene["windows"] if w["content"].get("slideshow")]
    assert len(shows) == 1
    win = shows[0]
    assert (win["x"], win["y"], win["w"], win["h"]) == (300, 200, 50, 100)
    assert win["content"]["slideIndex"] == 1

    # zero chrome: every pixel outside declared window rects is wall background
    cfg = scene["wall"]
    bg = np.array([int(cfg["background"][i:i + 2], 16) for i in (1, 3, 5)], dtype=np.uint8)
    for idx in range(cfg["rows"] * cfg["cols"]):
        img = from_ppm((rev_dir / f"screen-{idx}.ppm").read_bytes())
        r, c = divmod(idx, cfg["cols"])
        sx, sy = c * cfg["screenWidth"], r * cfg["screenHeight"]
        mask = np.ones(img.shape[:2], dtype=bool)
        for w in scene["windows"]:
            x0 = max(w["x"] - sx, 0)
            y0 = max(w["y"] - sy, 0)
            x1 = min(w["x"] + w["w"] - sx, cfg["screenWidth"])
            y1 = min(w["y"] + w["h"] - sy, cfg["screenHeight"])
            if x1 > x0 and y1 > y0:
                mask[y0:y1, x0:x1] = False
        assert (img[mask] == bg).all(), f"chrome pixels found on screen {idx}"


def test_idl_fixed_point():
    """parse -> emit -> parse structural equality on the shipped library plus
    500 random libraries; second emission byte-identical; < 10 s."""
    started = time.monotonic()
    source = presenter_idl_text()
    lib = parse_idl(source)
    text = emit_idl(lib)
    assert parse_idl(text) == lib
    assert emit_idl(parse_idl(text)) == text

    for seed in range(500):
        rlib = random_library(random.Random(seed))
        rtext = emit_idl(rlib)
        reparsed = parse_idl(rtext)
        assert reparsed == rlib, f"seed {seed}"
        assert emit_idl(reparsed) == rtext, f"seed {seed}"
    elapsed = time.monotonic() - started
    assert elapsed < 10.0, f"fixed point sweep took {elapsed:.2f}s"


def test_bidirectional_bridge(server, tmp_path):
    """server boots from the authored library; tlb dump over the wire
    reverse-generates a structurally equal one."""
    out = tmp_path / "dumped.sidl"
    proc = run_cli(server.port, "tlb", "dump",
                   "--server", f"127.0.0.1:{server.port}", "-o", str(out))
    assert proc.returncode == 0, proc.stderr
    assert parse_idl(out.read_text()) == parse_idl(presenter_idl_text())


def test_marshalling_round_trip():
    """10,000 random value trees round-trip bit-exactly, including float edges."""
    for bits in R4_EDGE_BITS:
        v = wire.r4(struct.unpack(">f", bits)[0])
        data = wire.encode_value(v)
        assert data[1:] == bits
        assert wire.decode_value(data) == v
    for bits in R8_EDGE_BITS:
        v = wire.r8(struct.unpack(">d", bits)[0])
        data = wire.encode_value(v)
        assert data[1:] == bits
        assert wire.decode_value(data) == v

    rng = random.Random(20260810)
    for i in range(10_000):
        v = random_value(rng)
        assert wire.decode_value(wire.encode_value(v)) == v, f"tree {i}"


def test_fault_fidelity(server):
    """a component fault message crosses the bridge string-equal; CLI exits 4."""
    s = connect("127.0.0.1", server.port)
    try:
        app = open_application(s)
        with pytest.raises(BridgeFault) as exc:
            app.get_Presentations().Open("missing.deck", 0, 0, 0)
        assert exc.value.code == wire.E_APP_FAULT
        assert exc.value.message == "file not found: missing.deck"
    finally:
        s.close()

    proc = run_cli(server.port, "show", "missing.deck")
    assert proc.returncode == 4
    assert "file not found: missing.deck" in proc.stderr


def test_lifetime(server):
    """use-after-release and use-after-Quit fault with E_OBJECT_NOT_FOUND in
    100/100 randomized interleavings; a dropped connection closes its windows."""
    s = connect("127.0.0.1", server.port)
    rng = random.Random(7)
    hits = 0
    try:
        for _ in range(100):
            app = open_application(s)
            presentations = app.get_Presentations()
            p = presentations.Open("presentation.deck", 0, 0, 0)
            view = p.get_SlideShowSettings().Run().get_View()
            tree = [app, presentations, p, view]
            mode = rng.choice(["quit", "release-app", "release-child", "exit-view"])
            if mode == "quit":
                app.Quit()
                victims = tree
            elif mode == "release-app":
                app.release()          # finalize tears the tree down
                victims = tree
            elif mode == "release-child":
                p.release()
                victims = [p]
                app.Quit()             # cleanup for the next round
            else:
                view.Exit()
                victims = [view]
                app.Quit()
            probe = rng.choice(victims)
            with pytest.raises(BridgeFault) as exc:
                if probe is app:
                    probe.get_WindowState()
                elif probe is presentations:
                    probe.get_Count()
                elif probe is p:
                    probe.get_Slides()
                else:
                    probe.Next()
            assert exc.value.code == wire.E_OBJECT_NOT_FOUND
            hits += 1
        assert hits == 100

        # connection drop closes all session-owned windows
        dropper = connect("127.0.0.1", server.port)
        app = open_application(dropper)
        app.set_Visible(1)
        p = app.get_Presentations().Open("presentation.deck", 0, 0, 0)
        p.get_SlideShowSettings().Run()
        wall = open_wall(s)
        assert len(json.loads(wall.SceneJson())["windows"]) == 1
        dropper.abort()
        deadline = time.monotonic() + 5
        while time.monotonic() < deadline:
            if json.loads(wall.SceneJson())["windows"] == []:
                break
            time.sleep(0.05)
        assert json.loads(wall.SceneJson())["windows"] == []
    finally:
        s.close()


def test_event_ordering(server, content_root):
    """100 Next() calls on a 101-slide deck deliver payloads exactly 2..101."""
    make_deck_file(content_root / "long.deck", slides=101, title="Long")
    s = connect("127.0.0.1", server.port)
    try:
        app = open_application(s)
        p = app.get_Presentations().Open("long.deck", 0, 0, 0)
        view = p.get_SlideShowSettings().Run().get_View()
        sub = view.subscribe_SlideChanged()
        for _ in range(100):
            view.Next()
        got = [sub.get(timeout=5.0)[0].value for _ in range(100)]
        assert got == list(range(2, 102))
    finally:
        s.close()


def test_clipping_conservation():
    """1,000 random rects on random walls (<= 4x4) match a brute-force
    per-pixel membership oracle on a 1/10-scale grid exactly."""
    rng = random.Random(99)
    for i in range(1000):
        # work in the 1/10-scale domain directly: every coordinate is exact
        cfg = WallConfig(rng.randint(1, 4), rng.randint(1, 4),
                         rng.randint(1, 192), rng.randint(1, 108))
        rect = (rng.randint(-80, cfg.canvas_width + 40),
                rng.randint(-80, cfg.canvas_height + 40),
                rng.randint(0, 250), rng.randint(0, 250))
        pieces = clip_to_screens(cfg, rect)

        expect = np.zeros((cfg.canvas_height, cfg.canvas_width), dtype=bool)
        x, y, w, h = rect
        x0, y0 = max(x, 0), max(y, 0)
        x1, y1 = min(x + w, cfg.canvas_width), min(y + h, cfg.canvas_height)
        if x1 > x0 and y1 > y0:
            expect[y0:y1, x0:x1] = True

        got = np.zeros_like(expect)
        for idx, (lx, ly, lw, lh) in pieces:
            sx, sy, sw, sh = cfg.screen_rect(idx)
            assert 0 <= lx and lx + lw <= sw and 0 <= ly and ly + lh <= sh
            block = got[sy + ly:sy + ly + lh, sx + lx:sx + lx + lw]
            assert not block.any(), f"case {i}: overlapping pieces"
            block[:] = True
        assert (got == expect).all(), f"case {i}: membership mismatch"


FUZZ_SECONDS = 60.0


def test_protocol_robustness(server):
    """random bytes at the framing layer for 60 s: no crash, no hang, and a
    concurrent valid client stays fully functional throughout."""
    stop = threading.Event()
    fuzz_errors = []

    def fuzz_loop(seed):
        rng = random.Random(seed)
        while not stop.is_set():
            try:
                sock = socket.create_connection(("127.0.0.1", server.port), timeout=2)
                sock.settimeout(0.5)
                if rng.random() < 0.4:   # sometimes open a real session first
                    sock.sendall(wire.encode_frame(
                        wire.Frame(wire.MSG_HELLO, 1, wire.build_hello())))
                for _ in range(rng.randint(1, 6)):
                    if rng.random() < 0.3:
                        # plausible frame header with garbage body
                        n = rng.randint(0, 64)
                        sock.sendall(struct.pack(">I", n) + rng.randbytes(n))
                    else:
                        sock.sendall(rng.randbytes(rng.randint(1, 512)))
                    try:
                        sock.recv(4096)
                    except socket.timeout:
                        pass
                sock.close()
            except OSError:
                pass
            except Exception as e:       # fuzzer bugs must not masquerade as passes
                fuzz_errors.append(e)
                return

    threads = [threading.Thread(target=fuzz_loop, args=(i,), daemon=True)
               for i in range(4)]
    for t in threads:
        t.start()

    client = connect("127.0.0.1", server.port)
    wall = open_wall(client)
    checks = 0
    started = time.monotonic()
    while time.monotonic() - started < FUZZ_SECONDS:
        assert isinstance(wall.get_Revision(), int)
        client.ping()
        checks += 1
        time.sleep(0.25)
    stop.set()
    for t in threads:
        t.join(timeout=5)

    assert not fuzz_errors
    assert checks > 0
    # the full control path still works after the storm
    app = open_application(client)
    p = app.get_Presentations().Open("presentation.deck", 0, 0, 0)
    view = p.get_SlideShowSettings().Run().get_View()
    view.Next()
    assert view.get_CurrentSlideIndex() == 2
    app.Quit()
    client.close()
    fresh = connect("127.0.0.1", server.port)   # server still accepts sessions
    fresh.ping()
    fresh.close()


def test_invoke_throughput(server, record_property):
    """report sequential invoke round-trips/s on loopback; gate at 200/s."""
    s = connect("127.0.0.1", server.port)
    try:
        wall = open_wall(s)
        wall.get_Revision()              # warm up
        n = 3000
        started = time.perf_counter()
        for _ in range(n):
            wall.get_Revision()
        elapsed = time.perf_counter() - started
    finally:
        s.close()
    rate = n / elapsed
    target = "meets" if rate >= 1000 else "BELOW"
    record_property("report", f"invoke round-trips: {rate:,.0f}/s over {n} calls "
                              f"({target} the 1,000/s desk-scale mark)")
    assert rate >= 200, f"throughput {rate:,.0f}/s below the 200/s gate"
