"""Videoserver entry point: wall model + component registry + orb listener."""

from __future__ import annotations

import argparse
import logging
import signal
import threading
from pathlib import Path

from .idl import parse_idl
from .orb import ComponentRegistry, OrbServer
from .presenter import ServerContext, component_factories, presenter_idl_text
from .wall.model import WallConfig, WallModel

log = logging.getLogger("sume.server")


def build_server(wall_cfg: WallConfig, content_root: Path, host: str = "127.0.0.1",
                 port: int = 7410, token: str | None = None,
                 idl_text: str | None = None) -> OrbServer:
    wall = WallModel(wall_cfg)
    ctx = ServerContext(wall=wall, content_root=Path(content_root))
    lib = parse_idl(idl_text if idl_text is not None else presenter_idl_text())
    registry = ComponentRegistry.from_library(lib, component_factories(ctx))
    server = OrbServer(registry, host=host, port=port, token=token)
    ctx.raise_event = server.raise_event
    return server


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sume-server",
        description="Headless videoserver: tiled wall compositor with a remote automation surface.")
    parser.add_argument("--wall", required=True, help="wall config file (JSON)")
    parser.add_argument("--content-root", required=True, help="directory holding .deck files")
    parser.add_argument("--bind", default="127.0.0.1:7410", help="host:port to listen on")
    parser.add_argument("--token", default=None, help="require this bearer token from clients")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")

    cfg = WallConfig.from_json(Path(args.wall).read_text(encoding="utf-8"))
    host, _, port = args.bind.rpartition(":")
    server = build_server(cfg, Path(args.content_root), host=host or "127.0.0.1",
                          port=int(port), token=args.token)
    server.start()
    log.info("serving %s wall (%dx%d screens of %dx%d) on %s",
             server.registry.library_name, cfg.rows, cfg.cols,
             cfg.screen_width, cfg.screen_height, server.endpoint)
    print(f"listening on {server.endpoint}", flush=True)

    stop = threading.Event()
    signal.signal(signal.SIGINT, lambda *a: stop.set())
    signal.signal(signal.SIGTERM, lambda *a: stop.set())
    stop.wait()
    server.stop()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
