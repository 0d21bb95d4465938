"""HTTP facade over one orb client session, for the operator console.

Every response is derived from server state on demand; the gateway keeps no
authoritative state of its own, so restarting it loses nothing. Wall changes
are pushed to /api/events subscribers as full state documents, coalesced to
at most 20 updates a second.
"""

from __future__ import annotations

import argparse
import json
import logging
import queue
import re
import signal
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from ..orb import BridgeFault, connect_endpoint
from ..sdk import open_application, open_wall
from ..sdk.presenter_stubs import PpSlideLayout

log = logging.getLogger("sume.gateway")

PUSH_INTERVAL = 0.05            # coalesce pushes to <= 20/s

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".map": "application/json",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}


class GatewayCore:
    """Session handling, state fetch, control verbs, and the push pipeline."""

    def __init__(self, server_endpoint: str, token: str | None = None):
        self.server_endpoint = server_endpoint
        self.token = token
        self._session = connect_endpoint(server_endpoint, token=token or "")
        self._wall = open_wall(self._session)
        self._verb_lock = threading.RLock()     # control verbs stay ordered
        self._clients: set[queue.Queue] = set()
        self._clients_lock = threading.Lock()
        self._dirty = threading.Event()
        self._stopping = threading.Event()
        self._wall.subscribe_RevisionChanged(callback=lambda a: self._dirty.set())
        self._wall.subscribe_WindowSlideChanged(callback=lambda a: self._dirty.set())
        self._pusher = threading.Thread(target=self._push_loop, daemon=True,
                                        name="gateway-push")
        self._pusher.start()

    def close(self) -> None:
        self._stopping.set()
        self._dirty.set()
        self._session.close()

    # --- state ---

    def wall_doc(self) -> dict:
        with self._verb_lock:
            return json.loads(self._wall.SceneJson())

    def decks(self) -> list[str]:
        with self._verb_lock:
            return json.loads(self._wall.ListDecks())

    # --- verbs ---

    def launch_show(self, deck: str, x: int, y: int, w: int, h: int) -> dict:
        with self._verb_lock:
            app = open_application(self._session)
            try:
                app.set_WindowState(2)
                app.set_Visible(1)
                presentations = app.get_Presentations()
                presentations.Open(deck, 0, 0, 0)
                presentation = presentations.Item(1)
                settings = presentation.get_SlideShowSettings()
                presentation.get_Slides().Add(1, PpSlideLayout.ppLayoutTitle)
                window = settings.Run()
                window.set_Width(float(w))
                window.set_Height(float(h))
                window.set_Left(float(x))
                window.set_Top(float(y))
                view = window.get_View()
                window_id = window.get_Id()
                self._wall.AdoptWindow(window_id)
                return {
                    "windowId": window_id,
                    "viewId": window_id,
                    "objects": {"window": window.object_id, "view": view.object_id},
                }
            finally:
                app.release()   # adopted window survives; the app tree does not

    def patch_window(self, window_id: int, fields: dict) -> dict:
        with self._verb_lock:
            doc = self.wall_doc()
            win = next((w for w in doc["windows"] if w["id"] == window_id), None)
            if win is None:
                raise _NotFound(f"unknown window: {window_id}")
            rect = {k: win[k] for k in ("x", "y", "w", "h")}
            geom_changed = False
            for k in ("x", "y", "w", "h"):
                if fields.get(k) is not None:
                    rect[k] = int(fields[k])
                    geom_changed = True
            if geom_changed:
                self._wall.SetWindowRect(window_id, rect["x"], rect["y"],
                                         rect["w"], rect["h"])
            if fields.get("z") is not None:
                self._wall.SetWindowZ(window_id, int(fields["z"]))
            return {"ok": True, "revision": self._wall.get_Revision()}

    def transport(self, window_id: int, verb: str, index: int | None = None) -> dict:
        with self._verb_lock:
            if verb == "next":
                self._wall.WindowNext(window_id)
            elif verb == "prev":
                self._wall.WindowPrevious(window_id)
            elif verb == "goto":
                if index is None:
                    raise _BadRequest("goto needs an index")
                self._wall.WindowGoto(window_id, index)
            elif verb == "exit":
                self._wall.WindowExit(window_id)
            else:
                raise _BadRequest(f"unknown verb {verb}")
            return {"ok": True, "revision": self._wall.get_Revision()}

    # --- event push ---

    def register_client(self) -> queue.Queue:
        q: queue.Queue = queue.Queue(maxsize=64)
        q.put(self.wall_doc())          # full state on connect
        with self._clients_lock:
            self._clients.add(q)
        return q

    def drop_client(self, q: queue.Queue) -> None:
        with self._clients_lock:
            self._clients.discard(q)

    def _push_loop(self) -> None:
        last_push = 0.0
        last_revision = -1
        while not self._stopping.is_set():
            self._dirty.wait(timeout=5.0)
            if self._stopping.is_set():
                return
            if not self._dirty.is_set():
                continue
            wait = PUSH_INTERVAL - (time.monotonic() - last_push)
            if wait > 0:
                time.sleep(wait)        # let bursts coalesce
            self._dirty.clear()
            try:
                doc = self.wall_doc()
            except (BridgeFault, ConnectionError, TimeoutError):
                continue
            last_push = time.monotonic()
            if doc["revision"] <= last_revision:
                continue
            last_revision = doc["revision"]
            with self._clients_lock:
                clients = list(self._clients)
            for q in clients:
                try:
                    q.put_nowait(doc)
                except queue.Full:      # slow client: it will resync on next push
                    pass


class _NotFound(Exception):
    pass


class _BadRequest(Exception):
    pass


def make_handler(core: GatewayCore, assets_dir: Path | None, client_token: str | None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt, *args):
            log.debug("%s %s", self.address_string(), fmt % args)

        # --- plumbing ---

        def _cors(self):
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods",
                             "GET, POST, PATCH, DELETE, OPTIONS")
            self.send_header("Access-Control-Allow-Headers",
                             "Content-Type, Authorization")

        def _json(self, status: int, doc) -> None:
            body = json.dumps(doc).encode("utf-8")
            self.send_response(status)
            self._cors()
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if length == 0:
                return {}
            try:
                doc = json.loads(self.rfile.read(length).decode("utf-8"))
            except (ValueError, UnicodeDecodeError):
                raise _BadRequest("body must be JSON") from None
            if not isinstance(doc, dict):
                raise _BadRequest("body must be a JSON object")
            return {k: v for k, v in doc.items() if v is not None}

        def _authorized(self) -> bool:
            if client_token is None:
                return True
            header = self.headers.get("Authorization", "")
            if header == f"Bearer {client_token}":
                return True
            # EventSource cannot set headers; allow the token as a query param
            query = self.path.partition("?")[2]
            return f"token={client_token}" in query.split("&")

        def _dispatch(self, method: str) -> None:
            path = self.path.split("?", 1)[0]
            try:
                if path.startswith("/api/"):
                    if path != "/api/config" and not self._authorized():
                        self._json(401, {"error": "bad token"})
                        return
                    self._api(method, path)
                elif method == "GET":
                    self._static(path)
                else:
                    self._json(404, {"error": "not found"})
            except _BadRequest as e:
                self._json(400, {"error": str(e)})
            except _NotFound as e:
                self._json(404, {"error": str(e)})
            except BridgeFault as e:
                if e.detail == "unknown-window":
                    self._json(404, {"error": e.message})
                else:
                    self._json(409, {"code": e.code_name, "message": e.message})
            except (ConnectionError, TimeoutError) as e:
                self._json(503, {"error": f"videoserver unavailable: {e}"})
            except BrokenPipeError:
                pass
            except Exception as e:
                log.exception("request failed: %s %s", method, path)
                self._json(500, {"error": str(e)})

        # --- routes ---

        def _api(self, method: str, path: str) -> None:
            if method == "GET" and path == "/api/config":
                self._json(200, {"authRequired": client_token is not None,
                                 "server": core.server_endpoint})
            elif method == "GET" and path == "/api/wall":
                self._json(200, core.wall_doc())
            elif method == "GET" and path == "/api/decks":
                self._json(200, core.decks())
            elif method == "GET" and path == "/api/events":
                self._events()
            elif method == "POST" and path == "/api/shows":
                body = self._body()
                if "deck" not in body:
                    raise _BadRequest("missing field deck")
                if "w" not in body or "h" not in body:
                    wall = core.wall_doc()["wall"]   # default: one full screen
                    body.setdefault("w", wall["screenWidth"])
                    body.setdefault("h", wall["screenHeight"])
                result = core.launch_show(
                    body["deck"], int(body.get("x", 0)), int(body.get("y", 0)),
                    int(body["w"]), int(body["h"]))
                self._json(201, result)
            elif method == "DELETE" and (m := re.fullmatch(r"/api/shows/(\d+)", path)):
                self._json(200, core.transport(int(m.group(1)), "exit"))
            elif method == "PATCH" and (m := re.fullmatch(r"/api/windows/(\d+)", path)):
                self._json(200, core.patch_window(int(m.group(1)), self._body()))
            elif method == "POST" and (m := re.fullmatch(r"/api/views/(\d+)/(next|prev|goto)", path)):
                body = self._body()
                self._json(200, core.transport(int(m.group(1)), m.group(2),
                                               body.get("index")))
            else:
                self._json(404, {"error": "not found"})

        def _chunk(self, data: bytes) -> None:
            self.wfile.write(f"{len(data):X}\r\n".encode() + data + b"\r\n")
            self.wfile.flush()

        def _events(self) -> None:
            q = core.register_client()
            try:
                self.send_response(200)
                self._cors()
                self.send_header("Content-Type", "text/event-stream")
                self.send_header("Cache-Control", "no-cache")
                self.send_header("Transfer-Encoding", "chunked")
                self.end_headers()
                while True:
                    try:
                        doc = q.get(timeout=15.0)
                        payload = json.dumps(doc)
                        self._chunk(f"event: wall\ndata: {payload}\n\n".encode())
                    except queue.Empty:
                        self._chunk(b": heartbeat\n\n")
            except (BrokenPipeError, ConnectionResetError, OSError):
                pass
            finally:
                core.drop_client(q)

        def _static(self, path: str) -> None:
            if assets_dir is None:
                self._json(404, {"error": "no assets directory configured"})
                return
            rel = path.lstrip("/") or "index.html"
            target = (assets_dir / rel).resolve()
            if not target.is_relative_to(assets_dir.resolve()) or not target.is_file():
                self._json(404, {"error": "not found"})
                return
            data = target.read_bytes()
            self.send_response(200)
            self._cors()
            ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        # --- verbs ---

        def do_GET(self):
            self._dispatch("GET")

        def do_POST(self):
            self._dispatch("POST")

        def do_PATCH(self):
            self._dispatch("PATCH")

        def do_DELETE(self):
            self._dispatch("DELETE")

        def do_OPTIONS(self):
            self.send_response(204)
            self._cors()
            self.send_header("Content-Length", "0")
            self.end_headers()

    return Handler


class Gateway:
    def __init__(self, listen: str, server_endpoint: str, token: str | None = None,
                 assets_dir: Path | None = None):
        self.core = GatewayCore(server_endpoint, token)
        host, _, port = listen.rpartition(":")
        handler = make_handler(self.core, assets_dir, token)
        self.httpd = ThreadingHTTPServer((host or "127.0.0.1", int(port)), handler)
        self.httpd.daemon_threads = True
        self._thread: threading.Thread | None = None

    @property
    def port(self) -> int:
        return self.httpd.server_address[1]

    def start(self) -> None:
        self._thread = threading.Thread(target=self.httpd.serve_forever,
                                        daemon=True, name="gateway-http")
        self._thread.start()

    def stop(self) -> None:
        self.httpd.shutdown()
        self.core.close()


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sume-gateway",
        description="HTTP and event-stream facade for the operator console.")
    parser.add_argument("--listen", default="127.0.0.1:8760", help="host:port for HTTP")
    parser.add_argument("--server", default="127.0.0.1:7410", help="videoserver host:port")
    parser.add_argument("--token", default=None,
                        help="bearer token for the videoserver and for HTTP clients")
    parser.add_argument("--assets", default=None,
                        help="directory with the built console bundle")
    parser.add_argument("-v", "--verbose", action="store_true")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    assets = Path(args.assets) if args.assets else None
    gw = Gateway(args.listen, args.server, token=args.token, assets_dir=assets)
    gw.start()
    print(f"gateway on http://{gw.httpd.server_address[0]}:{gw.port} "
          f"-> videoserver {args.server}", flush=True)

    stop = threading.Event()
    signal.signal(signal.SIGINT, lambda *a: stop.set())
    signal.signal(signal.SIGTERM, lambda *a: stop.set())
    stop.wait()
    gw.stop()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
