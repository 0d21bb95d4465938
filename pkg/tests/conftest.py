import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sume.orb import connect
from sume.server_main import build_server
from sume.wall.model import WallConfig


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        print(f"\n[acceptance] {status}: {name}", flush=True)
        for key, value in report.user_properties:
            if key == "report":
                print(f"[acceptance] {name}: {value}", flush=True)


def make_deck_file(path: Path, slides: int = 3, title: str = "Demo") -> None:
    doc = {
        "title": title,
        "slides": [
            {"layout": "ppLayoutText", "title": f"Slide {i}", "body": "line one\nline two"}
            for i in range(1, slides + 1)
        ],
    }
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")


@pytest.fixture
def content_root(tmp_path):
    root = tmp_path / "content"
    root.mkdir()
    make_deck_file(root / "presentation.deck", slides=3)
    make_deck_file(root / "intro.deck", slides=2, title="Intro")
    return root


@pytest.fixture
def server(content_root):
    srv = build_server(WallConfig(2, 2, 192, 108), content_root, port=0)
    srv.start()
    yield srv
    srv.stop()


@pytest.fixture
def session(server):
    s = connect("127.0.0.1", server.port, timeout=10.0)
    yield s
    s.close()
