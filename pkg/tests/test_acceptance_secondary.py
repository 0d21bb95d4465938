"""Console live-steering acceptance.

The console's own logic (drag math, stale-revision guard, single-PATCH drag
sessions) is covered by its vitest suite in frontend/test. This module
drives the running gateway+console stack end to end: the built bundle must
be served, external CLI shows must appear on the event stream within a
second, a drag-equivalent PATCH must land exactly, and transport must be
observable through `sumectl watch`.
"""

import json
import subprocess
import sys
import threading
import time
from pathlib import Path

import pytest
import requests

from sume.gateway import Gateway

REPO = Path(__file__).resolve().parent.parent
DIST = REPO / "frontend" / "dist"


@pytest.fixture
def gateway(server):
    if not (DIST / "index.html").is_file():
        pytest.fail("console bundle missing: run `npm install && npm run build` in frontend/")
    gw = Gateway("127.0.0.1:0", f"127.0.0.1:{server.port}", assets_dir=DIST)
    gw.start()
    yield gw
    gw.stop()


def url(gw, path):
    return f"http://127.0.0.1:{gw.port}{path}"


def sse_reader(gw, docs, stop):
    with requests.get(url(gw, "/api/events"), stream=True, timeout=30) as r:
        for line in r.iter_lines(decode_unicode=True):
            if stop.is_set():
                return
            if line and line.startswith("data:"):
                docs.append((time.monotonic(), json.loads(line[5:].strip())))


def test_console_live_steering(server, gateway):
    # the gateway serves the built console
    page = requests.get(url(gateway, "/"), timeout=10)
    assert page.status_code == 200
    assert "Wall Console" in page.text
    assert requests.get(url(gateway, "/main.js"), timeout=10).status_code == 200

    docs = []
    stop = threading.Event()
    reader = threading.Thread(target=sse_reader, args=(gateway, docs, stop), daemon=True)
    reader.start()
    deadline = time.monotonic() + 5
    while not docs and time.monotonic() < deadline:
        time.sleep(0.02)
    assert docs, "no initial state over the event stream"

    # an external CLI show appears on the stream within one second
    proc = subprocess.run(
        [sys.executable, "-m", "sume.cli", "--endpoint", f"127.0.0.1:{server.port}",
         "--porcelain", "show", "presentation.deck",
         "--x", "300", "--y", "200", "--w", "50", "--h", "100"],
        capture_output=True, text=True, timeout=30)
    assert proc.returncode == 0, proc.stderr
    shown_at = time.monotonic()
    window_id = int(proc.stdout.splitlines()[0].split("\t")[1])

    arrived_at = None
    deadline = shown_at + 2.0
    while time.monotonic() < deadline and arrived_at is None:
        for ts, doc in docs:
            if any(w["id"] == window_id for w in doc["windows"]):
                arrived_at = ts
                break
        time.sleep(0.01)
    assert arrived_at is not None, "window never appeared on the event stream"
    assert arrived_at - shown_at < 1.0, f"card took {arrived_at - shown_at:.2f}s"

    # dragging the card by (+100, 0) view px at scale 0.1 PATCHes x += 1000
    scale = 0.1
    drag_delta_view = 100
    wall_delta = round(drag_delta_view / scale)
    before = next(w for w in requests.get(url(gateway, "/api/wall"), timeout=10).json()["windows"]
                  if w["id"] == window_id)
    r = requests.patch(url(gateway, f"/api/windows/{window_id}"),
                       json={"x": before["x"] + wall_delta}, timeout=10)
    assert r.status_code == 200
    after = next(w for w in requests.get(url(gateway, "/api/wall"), timeout=10).json()["windows"]
                 if w["id"] == window_id)
    assert abs(after["x"] - (before["x"] + 1000)) <= 1
    assert (after["y"], after["w"], after["h"]) == (before["y"], before["w"], before["h"])

    # transport buttons change the slide index, observable via sumectl watch
    watcher = subprocess.Popen(
        [sys.executable, "-u", "-m", "sume.cli", "--endpoint", f"127.0.0.1:{server.port}",
         "watch", "--duration", "10"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    try:
        assert "watching" in watcher.stdout.readline()
        r = requests.post(url(gateway, f"/api/views/{window_id}/next"), json={}, timeout=10)
        assert r.status_code == 200
        slide_lines = []
        deadline = time.monotonic() + 8
        while time.monotonic() < deadline:
            line = watcher.stdout.readline()
            if not line:
                break
            if line.startswith("SlideChanged"):
                slide_lines.append(line.strip())
                break
        assert any(ln.startswith(f"SlideChanged 2 window {window_id}") for ln in slide_lines), \
            slide_lines
    finally:
        watcher.kill()
        watcher.wait()
        stop.set()

    doc = requests.get(url(gateway, "/api/wall"), timeout=10).json()
    win = next(w for w in doc["windows"] if w["id"] == window_id)
    assert win["content"]["slideIndex"] == 2
