"""Threaded remote-object server.

One thread per connection reads and dispatches frames in order, so calls on
any one object execute in request order. A writer thread per connection
drains an outbound queue, letting event pushes from other threads interleave
safely with results. Object references are connection-scoped: ids are never
reused, and closing a connection releases everything it still holds.
"""

from __future__ import annotations

import logging
import queue
import select
import socket
import threading
import time

from . import wire
from .registry import ComponentRegistry

log = logging.getLogger(__name__)

FRAME_DEADLINE = 10.0          # seconds to finish receiving a started frame
_TYPE_TAGS = {
    "bool": wire.BOOL, "i2": wire.I2, "i4": wire.I4, "i8": wire.I8,
    "r4": wire.R4, "r8": wire.R8, "string": wire.STRING,
}


def recv_exact(sock, n: int, started: bool) -> bytes | None:
    """Read exactly n bytes. Returns None on a clean EOF at a frame boundary.

    Idle connections may wait forever for a new frame, but once any byte of
    a frame has arrived the rest must show up within FRAME_DEADLINE. The
    deadline is enforced with select, never settimeout: a writer thread may
    be mid-send on this socket, and settimeout flips the shared fd between
    blocking and non-blocking under it.
    """
    buf = bytearray()
    deadline = time.monotonic() + FRAME_DEADLINE if started else None
    while len(buf) < n:
        try:
            if deadline is None:
                select.select([sock], [], [])
            else:
                remaining = deadline - time.monotonic()
                if remaining <= 0 or not select.select([sock], [], [], remaining)[0]:
                    raise wire.ProtocolError("frame read deadline exceeded")
            chunk = sock.recv(n - len(buf))
        except (OSError, ValueError):
            # socket closed under us; at a frame boundary that is a clean EOF
            if not buf and not started:
                return None
            raise wire.ProtocolError("connection closed mid-frame") from None
        if not chunk:
            if not buf and not started:
                return None
            raise wire.ProtocolError("connection closed mid-frame")
        buf += chunk
        if deadline is None:
            deadline = time.monotonic() + FRAME_DEADLINE
    return bytes(buf)


def read_frame(sock) -> wire.Frame | None:
    header = recv_exact(sock, 4, started=False)
    if header is None:
        return None
    length = int.from_bytes(header, "big")
    if length > wire.MAX_FRAME:
        raise wire.ProtocolError(f"frame length {length} exceeds limit")
    if length < 5:
        raise wire.ProtocolError(f"frame length {length} too short")
    body = recv_exact(sock, length, started=True)
    return wire.decode_body(body)


class _Export:
    __slots__ = ("instance", "interface", "refcount")

    def __init__(self, instance, interface: str):
        self.instance = instance
        self.interface = interface
        self.refcount = 1


class _Connection:
    def __init__(self, server: "OrbServer", sock, peer: str):
        self.server = server
        self.sock = sock
        self.peer = peer
        self.exports: dict[int, _Export] = {}
        self.by_instance: dict[int, int] = {}      # id(instance) -> object id
        self.subscriptions: set[tuple[int, int]] = set()
        self.next_id = 1
        self.hello_done = False
        self.outbox: queue.Queue = queue.Queue()
        self.closed = threading.Event()

    # --- outbound ---

    def send(self, frame: wire.Frame) -> None:
        if not self.closed.is_set():
            self.outbox.put(frame)

    def _writer_loop(self) -> None:
        while True:
            frame = self.outbox.get()
            if frame is None:
                break
            try:
                self.sock.sendall(wire.encode_frame(frame))
            except OSError:
                break
        self.closed.set()

    # --- lifecycle ---

    def run(self) -> None:
        self._writer = threading.Thread(target=self._writer_loop, daemon=True,
                                        name=f"orb-writer-{self.peer}")
        self._writer.start()
        try:
            self._reader_loop()
        finally:
            self._teardown()

    def _reader_loop(self) -> None:
        while not self.closed.is_set():
            try:
                frame = read_frame(self.sock)
            except wire.ProtocolError as e:
                self._fault(0, wire.E_PROTOCOL, str(e))
                return
            except OSError:
                return
            if frame is None:
                return
            try:
                keep_going = self._handle(frame)
            except wire.ProtocolError as e:
                # malformed body inside an intact frame: fault, keep session
                self._fault(frame.correlation_id, wire.E_PROTOCOL, str(e))
                keep_going = self.hello_done
            if not keep_going:
                return

    def _teardown(self) -> None:
        self.outbox.put(None)
        self._writer.join(timeout=5.0)   # flush queued replies before closing
        self.closed.set()
        finalize = self.server._drop_connection(self)
        for instance in finalize:
            _finalize_instance(instance)
        try:
            self.sock.close()
        except OSError:
            pass

    def _fault(self, corr: int, code: int, message: str, detail: str = "") -> None:
        self.send(wire.Frame(wire.MSG_FAULT, corr,
                             wire.build_fault(code, message, detail)))

    # --- frame handling ---

    def _handle(self, frame: wire.Frame) -> bool:
        t = frame.msg_type
        corr = frame.correlation_id
        if not self.hello_done:
            if t != wire.MSG_HELLO:
                self._fault(corr, wire.E_PROTOCOL, "expected HELLO")
                return False
            return self._on_hello(frame)
        if t == wire.MSG_HELLO:
            self._fault(corr, wire.E_PROTOCOL, "session already established")
            return True
        if t == wire.MSG_PING:
            self.send(wire.Frame(wire.MSG_PONG, corr))
            return True
        if t == wire.MSG_BYE:
            return False
        if t == wire.MSG_ACTIVATE:
            self._on_activate(corr, frame.payload)
            return True
        if t == wire.MSG_INVOKE:
            self._on_invoke(corr, frame.payload)
            return True
        if t == wire.MSG_GETID:
            self._on_getid(corr, frame.payload)
            return True
        if t == wire.MSG_SUBSCRIBE:
            self._on_subscribe(corr, frame.payload)
            return True
        if t == wire.MSG_RELEASE:
            self._on_release(corr, frame.payload)
            return True
        if t == wire.MSG_REFLECT:
            self._on_reflect(corr)
            return True
        self._fault(corr, wire.E_PROTOCOL, f"unknown message type 0x{t:02x}")
        return True

    def _on_hello(self, frame: wire.Frame) -> bool:
        version, token = wire.parse_hello(frame.payload)
        if version < 1:
            self._fault(frame.correlation_id, wire.E_PROTOCOL,
                        f"unsupported protocol version {version}")
            return False
        if self.server.token is not None and token != self.server.token:
            self._fault(frame.correlation_id, wire.E_ACCESS_DENIED, "bad token")
            return False
        negotiated = min(version, wire.PROTOCOL_VERSION)
        self.hello_done = True
        self.send(wire.Frame(wire.MSG_HELLO_ACK, frame.correlation_id,
                             wire.build_hello_ack(negotiated)))
        return True

    def _on_activate(self, corr: int, payload: bytes) -> None:
        prog_id = wire.parse_activate(payload)
        try:
            instance, interface = self.server.registry.activate(prog_id)
        except KeyError:
            self._fault(corr, wire.E_PROGID_UNKNOWN, f"unknown progid: {prog_id}")
            return
        oid = self.server._export(self, instance, interface, fresh=True)
        self.send(wire.Frame(wire.MSG_ACTIVATE_ACK, corr,
                             wire.build_objref_ack(oid, interface)))

    def _lookup(self, corr: int, oid: int) -> _Export | None:
        export = self.server._get_export(self, oid)
        if export is None or not getattr(export.instance, "alive", True):
            self._fault(corr, wire.E_OBJECT_NOT_FOUND, f"no object {oid}")
            return None
        return export

    def _on_getid(self, corr: int, payload: bytes) -> None:
        oid, name = wire.parse_getid(payload)
        export = self._lookup(corr, oid)
        if export is None:
            return
        slot = self.server.registry.slot_by_name(export.interface, name)
        if slot is None:
            self._fault(corr, wire.E_MEMBER_NOT_FOUND,
                        f"{export.interface} has no member {name}")
            return
        self.send(wire.Frame(wire.MSG_GETID_ACK, corr, wire.build_getid_ack(slot.disp_id)))

    def _on_subscribe(self, corr: int, payload: bytes) -> None:
        oid, name = wire.parse_subscribe(payload)
        export = self._lookup(corr, oid)
        if export is None:
            return
        slot = self.server.registry.slot_by_name(export.interface, name)
        if slot is None or slot.kind != "event":
            self._fault(corr, wire.E_MEMBER_NOT_FOUND,
                        f"{export.interface} has no event {name}")
            return
        with self.server._lock:
            self.subscriptions.add((oid, slot.disp_id))
        self.send(wire.Frame(wire.MSG_SUBSCRIBE_ACK, corr,
                             wire.build_subscribe_ack(slot.disp_id)))

    def _on_release(self, corr: int, payload: bytes) -> None:
        oid = wire.parse_release(payload)
        released, finalize = self.server._release(self, oid)
        if not released:
            self._fault(corr, wire.E_OBJECT_NOT_FOUND, f"no object {oid}")
            return
        if finalize is not None:
            _finalize_instance(finalize)
        self.send(wire.Frame(wire.MSG_RELEASE_ACK, corr))

    def _on_reflect(self, corr: int) -> None:
        from ..proxygen.reverse import reverse_generate
        from ..idl import emit_idl

        text = emit_idl(reverse_generate(self.server.registry))
        self.send(wire.Frame(wire.MSG_REFLECT_ACK, corr, wire.build_reflect_ack(text)))

    def _on_invoke(self, corr: int, payload: bytes) -> None:
        oid, disp_id, args = wire.parse_invoke(payload)
        export = self._lookup(corr, oid)
        if export is None:
            return
        slot = self.server.registry.slot(export.interface, disp_id)
        if slot is None:
            self._fault(corr, wire.E_MEMBER_NOT_FOUND,
                        f"{export.interface} has no dispatch id {disp_id}")
            return
        if slot.kind == "event":
            self._fault(corr, wire.E_MEMBER_NOT_FOUND,
                        f"{slot.name} is an event, not invokable")
            return
        try:
            py_args = self._unmarshal_args(slot, args)
        except _TypeMismatch as e:
            self._fault(corr, wire.E_TYPE_MISMATCH, str(e))
            return
        except _BadObjref as e:
            self._fault(corr, wire.E_OBJECT_NOT_FOUND, str(e))
            return

        method = getattr(export.instance, slot.name, None)
        if method is None:
            self._fault(corr, wire.E_MEMBER_NOT_FOUND,
                        f"{export.interface}.{slot.name} not implemented")
            return
        try:
            result = method(*py_args)
        except wire.BridgeFault as e:
            self._fault(corr, e.code, e.message, e.detail)
            return
        except Exception as e:  # component bug: surface as an app fault
            log.exception("unhandled component error in %s.%s", export.interface, slot.name)
            self._fault(corr, wire.E_APP_FAULT, str(e), type(e).__name__)
            return
        try:
            value = self._marshal_result(slot.return_type, result)
        except Exception as e:
            self._fault(corr, wire.E_APP_FAULT, f"unmarshallable result: {e}", "internal")
            return
        self.send(wire.Frame(wire.MSG_RESULT, corr, wire.build_result(value)))

    # --- marshalling against declared signatures ---

    def _unmarshal_args(self, slot, args: list[wire.WireValue]) -> list:
        expected = slot.param_types
        if len(args) != len(expected):
            raise _TypeMismatch(
                f"{slot.name} expects {len(expected)} args, got {len(args)}")
        out = []
        for i, (tname, value) in enumerate(zip(expected, args)):
            kind = self.server.registry.kind_of_type(tname)
            if kind == "interface":
                if value.tag == wire.NULL:
                    out.append(None)
                    continue
                if value.tag != wire.OBJREF:
                    raise _TypeMismatch(
                        f"{slot.name} arg {i + 1}: expected objref of {tname}")
                ref_oid, _ = value.value
                export = self.server._get_export(self, ref_oid)
                if export is None or not getattr(export.instance, "alive", True):
                    raise _BadObjref(f"no object {ref_oid}")
                if export.interface != tname:
                    raise _TypeMismatch(
                        f"{slot.name} arg {i + 1}: expected {tname}, got {export.interface}")
                out.append(export.instance)
                continue
            want = wire.I4 if kind == "enum" else _TYPE_TAGS[tname]
            if value.tag != want:
                raise _TypeMismatch(
                    f"{slot.name} arg {i + 1}: expected {tname}, "
                    f"got {wire.TAG_NAMES[value.tag]}")
            out.append(value.value)
        return out

    def _marshal_result(self, type_name: str, result) -> wire.WireValue:
        if type_name == "void":
            return wire.void()
        kind = self.server.registry.kind_of_type(type_name)
        if kind == "interface":
            if result is None:
                return wire.null()
            oid = self.server._export(self, result, type_name, fresh=False)
            return wire.objref(oid, type_name)
        if kind == "enum":
            return wire.i4(int(result))
        if type_name == "bool":
            return wire.boolean(bool(result))
        if type_name in ("i2", "i4", "i8"):
            return wire.WireValue(_TYPE_TAGS[type_name], int(result))
        if type_name in ("r4", "r8"):
            return wire.WireValue(_TYPE_TAGS[type_name], float(result))
        return wire.string(result)


class _TypeMismatch(Exception):
    pass


class _BadObjref(Exception):
    pass


def _finalize_instance(instance) -> None:
    hook = getattr(instance, "_finalize", None)
    if hook is not None:
        try:
            hook()
        except Exception:
            log.exception("finalize hook failed for %r", instance)


class OrbServer:
    def __init__(self, registry: ComponentRegistry, host: str = "127.0.0.1",
                 port: int = 7410, token: str | None = None):
        self.registry = registry
        self.host = host
        self.port = port
        self.token = token
        self._lock = threading.Lock()
        self._conns: set[_Connection] = set()
        self._instance_exports: dict[int, set[tuple[_Connection, int]]] = {}
        self._instance_refs: dict[int, object] = {}
        self._listener: socket.socket | None = None
        self._accept_thread: threading.Thread | None = None
        self._stopping = threading.Event()

    # --- lifecycle ---

    def start(self) -> None:
        sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        sock.bind((self.host, self.port))
        sock.listen(32)
        self.port = sock.getsockname()[1]
        self._listener = sock
        self._accept_thread = threading.Thread(target=self._accept_loop, daemon=True,
                                               name="orb-accept")
        self._accept_thread.start()

    def _accept_loop(self) -> None:
        while not self._stopping.is_set():
            try:
                client, addr = self._listener.accept()
            except OSError:
                return
            client.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
            self.attach(client, f"{addr[0]}:{addr[1]}")

    def attach(self, sock, peer: str = "stream") -> None:
        """Serve one session on any connected, socket-like byte stream."""
        conn = _Connection(self, sock, peer)
        with self._lock:
            self._conns.add(conn)
        threading.Thread(target=conn.run, daemon=True,
                         name=f"orb-conn-{peer}").start()

    def stop(self) -> None:
        self._stopping.set()
        if self._listener is not None:
            try:
                self._listener.close()
            except OSError:
                pass
        with self._lock:
            conns = list(self._conns)
        for conn in conns:
            try:
                conn.sock.close()
            except OSError:
                pass

    @property
    def endpoint(self) -> str:
        return f"{self.host}:{self.port}"

    # --- export table management ---

    def _export(self, conn: _Connection, instance, interface: str, fresh: bool) -> int:
        with self._lock:
            if not fresh:
                existing = conn.by_instance.get(id(instance))
                if existing is not None and existing in conn.exports:
                    conn.exports[existing].refcount += 1
                    return existing
            oid = conn.next_id
            conn.next_id += 1
            conn.exports[oid] = _Export(instance, interface)
            conn.by_instance[id(instance)] = oid
            self._instance_exports.setdefault(id(instance), set()).add((conn, oid))
            self._instance_refs[id(instance)] = instance
            return oid

    def _get_export(self, conn: _Connection, oid: int) -> _Export | None:
        with self._lock:
            return conn.exports.get(oid)

    def _release(self, conn: _Connection, oid: int):
        """Returns (released?, instance-to-finalize-or-None)."""
        with self._lock:
            export = conn.exports.get(oid)
            if export is None:
                return False, None
            export.refcount -= 1
            if export.refcount > 0:
                return True, None
            del conn.exports[oid]
            conn.by_instance.pop(id(export.instance), None)
            conn.subscriptions = {s for s in conn.subscriptions if s[0] != oid}
            return True, self._unlink(export.instance, conn, oid)

    def _unlink(self, instance, conn: _Connection, oid: int):
        key = id(instance)
        holders = self._instance_exports.get(key)
        if holders is not None:
            holders.discard((conn, oid))
            if not holders:
                del self._instance_exports[key]
                self._instance_refs.pop(key, None)
                return instance
        return None

    def _drop_connection(self, conn: _Connection) -> list:
        finalize = []
        with self._lock:
            self._conns.discard(conn)
            for oid, export in list(conn.exports.items()):
                inst = self._unlink(export.instance, conn, oid)
                if inst is not None:
                    finalize.append(inst)
            conn.exports.clear()
            conn.by_instance.clear()
            conn.subscriptions.clear()
        return finalize

    # --- event fan-out (callable from any thread) ---

    def raise_event(self, instance, event_name: str, args: list[wire.WireValue]) -> None:
        with self._lock:
            holders = list(self._instance_exports.get(id(instance), ()))
            targets = []
            for conn, oid in holders:
                export = conn.exports.get(oid)
                if export is None:
                    continue
                slot = self.registry.slot_by_name(export.interface, event_name)
                if slot is None:
                    continue
                if (oid, slot.disp_id) in conn.subscriptions:
                    targets.append((conn, oid, slot.disp_id))
        for conn, oid, disp_id in targets:
            conn.send(wire.Frame(wire.MSG_EVENT, 0, wire.build_event(oid, disp_id, args)))
