"""sumectl: scripted control of the videoserver.

Exit codes: 0 ok, 2 usage, 3 connection problem, 4 protocol or app fault.
"""

from __future__ import annotations

import argparse
import base64
import json
import os
import socket
import sys
import time
from pathlib import Path

from .idl import parse_idl
from .orb import BridgeFault, SessionClosed, connect_endpoint, wire
from .proxygen import generate_manifest, manifest_text
from .sdk import open_application, open_wall
from .sdk.presenter_stubs import PpSlideLayout

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONNECTION = 3
EXIT_FAULT = 4

DEFAULT_ENDPOINT = "127.0.0.1:7410"


class _Out:
    def __init__(self, porcelain: bool):
        self.porcelain = porcelain

    def emit(self, human: str, *fields) -> None:
        if self.porcelain:
            print("\t".join(str(f) for f in fields), flush=True)
        else:
            print(human, flush=True)


def _connect(args):
    try:
        return connect_endpoint(args.endpoint, token=args.token or "")
    except ConnectionRefusedError:
        raise _ConnectionProblem(f"connection refused: {args.endpoint}") from None
    except (OSError, socket.timeout) as e:
        raise _ConnectionProblem(f"cannot connect to {args.endpoint}: {e}") from None


class _ConnectionProblem(Exception):
    pass


def _pick_window(wall, window_arg: int | None) -> int:
    if window_arg is not None:
        return window_arg
    scene = json.loads(wall.SceneJson())
    shows = [w["id"] for w in scene["windows"] if w["content"].get("slideshow")]
    if len(shows) == 1:
        return shows[0]
    if not shows:
        raise BridgeFault(wire.E_APP_FAULT, "no slideshow window on the wall")
    raise BridgeFault(wire.E_APP_FAULT,
                      f"several slideshow windows ({shows}); pass --window")


def cmd_show(args, out: _Out) -> int:
    session = _connect(args)
    try:
        app = open_application(session)
        app.set_WindowState(2)
        app.set_Visible(1)
        presentations = app.get_Presentations()
        presentations.Open(args.deck, 0, 0, 0)
        presentation = presentations.Item(1)
        settings = presentation.get_SlideShowSettings()
        presentation.get_Slides().Add(1, PpSlideLayout.ppLayoutTitle)
        window = settings.Run()
        if args.w is not None:
            window.set_Width(args.w)
        if args.h is not None:
            window.set_Height(args.h)
        if args.x is not None:
            window.set_Left(args.x)
        if args.y is not None:
            window.set_Top(args.y)
        view = window.get_View()
        window_id = window.get_Id()
        # keep the show alive after this session ends
        wall = open_wall(session)
        wall.AdoptWindow(window_id)
        out.emit(f"window {window_id}", "window", window_id)
        for name, proxy in (("app", app), ("presentations", presentations),
                            ("presentation", presentation), ("settings", settings),
                            ("show-window", window), ("view", view)):
            out.emit(f"object {name} {proxy.object_id}", "object", name, proxy.object_id)
        return EXIT_OK
    finally:
        session.close()


def _transport(args, out: _Out, verb: str) -> int:
    session = _connect(args)
    try:
        wall = open_wall(session)
        wid = _pick_window(wall, args.window)
        if verb == "next":
            wall.WindowNext(wid)
        elif verb == "prev":
            wall.WindowPrevious(wid)
        elif verb == "goto":
            wall.WindowGoto(wid, args.index)
        else:
            wall.WindowExit(wid)
            out.emit(f"window {wid} closed", "closed", wid)
            return EXIT_OK
        scene = json.loads(wall.SceneJson())
        win = next(w for w in scene["windows"] if w["id"] == wid)
        idx = win["content"]["slideIndex"]
        out.emit(f"window {wid} slide {idx}", "slide", wid, idx)
        return EXIT_OK
    finally:
        session.close()


def cmd_snapshot(args, out: _Out) -> int:
    session = _connect(args)
    try:
        wall = open_wall(session)
        for _ in range(5):
            scene_text = wall.SceneJson()
            scene = json.loads(scene_text)
            screens = scene["wall"]["rows"] * scene["wall"]["cols"]
            ppms = [base64.b64decode(wall.ScreenPpm(i)) for i in range(screens)]
            if json.loads(wall.SceneJson())["revision"] == scene["revision"]:
                break
        else:
            raise BridgeFault(wire.E_APP_FAULT, "wall kept changing during snapshot")
        rev_dir = Path(args.output) / f"rev-{scene['revision']}"
        rev_dir.mkdir(parents=True, exist_ok=True)
        (rev_dir / "scene.json").write_text(scene_text, encoding="utf-8")
        for i, ppm in enumerate(ppms):
            (rev_dir / f"screen-{i}.ppm").write_bytes(ppm)
        out.emit(f"snapshot written to {rev_dir}", "snapshot", rev_dir)
        return EXIT_OK
    finally:
        session.close()


def cmd_watch(args, out: _Out) -> int:
    session = _connect(args)
    try:
        wall = open_wall(session)
        wall.subscribe_WindowSlideChanged(
            callback=lambda a: out.emit(
                f"SlideChanged {a[1].value} window {a[0].value}",
                "slide", a[0].value, a[1].value))
        wall.subscribe_RevisionChanged(
            callback=lambda a: out.emit(f"Revision {a[0].value}", "revision", a[0].value))
        out.emit(f"watching (revision {wall.get_Revision()})", "watching", wall.get_Revision())
        deadline = time.monotonic() + args.duration if args.duration else None
        try:
            while not session.closed:
                time.sleep(0.2)
                if deadline is not None and time.monotonic() >= deadline:
                    break
        except KeyboardInterrupt:
            pass
        return EXIT_OK
    finally:
        session.close()


def cmd_tlb_gen(args, out: _Out) -> int:
    source = Path(args.library).read_text(encoding="utf-8")
    manifest = generate_manifest(parse_idl(source))
    text = manifest_text(manifest)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        out.emit(f"manifest written to {args.output} ({manifest['contentHash']})",
                 "manifest", args.output, manifest["contentHash"])
    return EXIT_OK


def cmd_tlb_dump(args, out: _Out) -> int:
    if args.server:
        args.endpoint = args.server
    session = _connect(args)
    try:
        text = session.reflect()
    finally:
        session.close()
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        out.emit(f"library written to {args.output}", "library", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumectl", description="Control a running videoserver wall.")
    parser.add_argument("--endpoint", default=os.environ.get("SUME_ENDPOINT", DEFAULT_ENDPOINT),
                        help="server host:port (or $SUME_ENDPOINT)")
    parser.add_argument("--token", default=os.environ.get("SUME_TOKEN"),
                        help="bearer token (or $SUME_TOKEN)")
    parser.add_argument("--porcelain", action="store_true",
                        help="stable tab-separated output")
    sub = parser.add_subparsers(dest="command", required=True)

    show = sub.add_parser("show", help="open a deck and run it as a chromeless show")
    show.add_argument("deck")
    show.add_argument("--x", type=float, default=None)
    show.add_argument("--y", type=float, default=None)
    show.add_argument("--w", type=float, default=None)
    show.add_argument("--h", type=float, default=None)

    goto = sub.add_parser("goto", help="jump a show to a slide")
    goto.add_argument("index", type=int)
    goto.add_argument("--window", type=int, default=None)
    for verb in ("next", "prev", "exit"):
        p = sub.add_parser(verb, help=f"{verb} on a show window")
        p.add_argument("--window", type=int, default=None)

    snap = sub.add_parser("snapshot", help="write scene.json and per-screen PPMs")
    snap.add_argument("-o", "--output", required=True)

    watch = sub.add_parser("watch", help="stream slide and revision events")
    watch.add_argument("--duration", type=float, default=None,
                       help="stop after this many seconds (default: run until killed)")

    tlb = sub.add_parser("tlb", help="type library tools")
    tlb_sub = tlb.add_subparsers(dest="tlb_command", required=True)
    gen = tlb_sub.add_parser("gen", help="generate a proxy manifest from a .sidl file")
    gen.add_argument("library")
    gen.add_argument("-o", "--output", required=True)
    dump = tlb_sub.add_parser("dump", help="reverse-generate .sidl from a running server")
    dump.add_argument("--server", default=None, help="host:port (defaults to --endpoint)")
    dump.add_argument("-o", "--output", required=True)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(args.porcelain)
    try:
        if args.command == "show":
            return cmd_show(args, out)
        if args.command in ("next", "prev", "exit"):
            return _transport(args, out, args.command)
        if args.command == "goto":
            return _transport(args, out, "goto")
        if args.command == "snapshot":
            return cmd_snapshot(args, out)
        if args.command == "watch":
            return cmd_watch(args, out)
        if args.command == "tlb":
            if args.tlb_command == "gen":
                return cmd_tlb_gen(args, out)
            return cmd_tlb_dump(args, out)
        parser.error(f"unknown command {args.command}")
    except _ConnectionProblem as e:
        print(str(e), file=sys.stderr)
        return EXIT_CONNECTION
    except (SessionClosed, TimeoutError) as e:
        print(f"connection lost: {e}", file=sys.stderr)
        return EXIT_CONNECTION
    except BridgeFault as e:
        print(f"{e.code_name}: {e.message}", file=sys.stderr)
        return EXIT_FAULT
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
