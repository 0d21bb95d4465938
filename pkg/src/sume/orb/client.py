"""Client session: activation, invocation, events, lifetimes over one socket.

A session is safe to use from several threads. Outstanding calls are keyed
by correlation id; a reader thread demultiplexes replies, and pushed events
are handed to one dispatch thread so no subscription ever sees concurrent
callbacks.
"""

from __future__ import annotations

import itertools
import queue
import socket
import threading
from dataclasses import dataclass

from . import wire
from .server import read_frame

DEFAULT_PORT = 7410
CALL_TIMEOUT = 30.0


@dataclass(frozen=True)
class ObjectRef:
    object_id: int
    interface: str


class SessionClosed(ConnectionError):
    pass


class Subscription:
    """Delivers event argument lists in raise order.

    Pass a callback to have it invoked on the session's dispatch thread, or
    poll with get(); None means the session ended.
    """

    def __init__(self, ref: ObjectRef, event_name: str, disp_id: int, callback=None):
        self.ref = ref
        self.event_name = event_name
        self.disp_id = disp_id
        self.callback = callback
        self.events: queue.Queue = queue.Queue()

    def get(self, timeout: float | None = None):
        return self.events.get(timeout=timeout)

    def _deliver(self, args) -> None:
        if self.callback is not None:
            self.callback(args)
        else:
            self.events.put(args)


class Session:
    def __init__(self, sock, token: str = "", timeout: float = CALL_TIMEOUT):
        self._sock = sock
        self._timeout = timeout
        self._write_lock = threading.Lock()
        self._corr = itertools.count(1)
        self._pending: dict[int, queue.Queue] = {}
        self._pending_lock = threading.Lock()
        self._subs: dict[tuple[int, int], list[Subscription]] = {}
        self._event_queue: queue.Queue = queue.Queue()
        self._closed = threading.Event()
        self._reader = threading.Thread(target=self._reader_loop, daemon=True,
                                        name="orb-client-reader")
        self._reader.start()
        self._dispatcher = threading.Thread(target=self._event_loop, daemon=True,
                                            name="orb-client-events")
        self._dispatcher.start()
        ack = self._call(wire.MSG_HELLO, wire.build_hello(wire.PROTOCOL_VERSION, token))
        self.protocol_version = wire.parse_hello_ack(ack.payload)

    # --- plumbing ---

    def _send(self, frame: wire.Frame) -> None:
        if self._closed.is_set():
            raise SessionClosed("session is closed")
        data = wire.encode_frame(frame)
        with self._write_lock:
            try:
                self._sock.sendall(data)
            except OSError as e:
                raise SessionClosed(f"send failed: {e}") from None

    def _call(self, msg_type: int, payload: bytes = b"") -> wire.Frame:
        corr = (next(self._corr) - 1) % 0xFFFFFFFF + 1   # cycles 1..2^32-1
        inbox: queue.Queue = queue.Queue(maxsize=1)
        with self._pending_lock:
            self._pending[corr] = inbox
        try:
            self._send(wire.Frame(msg_type, corr, payload))
            try:
                reply = inbox.get(timeout=self._timeout)
            except queue.Empty:
                raise TimeoutError(f"no reply within {self._timeout}s") from None
        finally:
            with self._pending_lock:
                self._pending.pop(corr, None)
        if reply is None:
            raise SessionClosed("connection lost")
        if reply.msg_type == wire.MSG_FAULT:
            raise wire.parse_fault(reply.payload)
        return reply

    def _reader_loop(self) -> None:
        while not self._closed.is_set():
            try:
                frame = read_frame(self._sock)
            except (wire.ProtocolError, OSError):
                break
            if frame is None:
                break
            if frame.msg_type == wire.MSG_EVENT:
                self._event_queue.put(frame)
                continue
            with self._pending_lock:
                inbox = self._pending.get(frame.correlation_id)
            if inbox is not None:
                inbox.put(frame)
            # unmatched frames (e.g. connection-level faults) are dropped
        self._shutdown()

    def _event_loop(self) -> None:
        while True:
            frame = self._event_queue.get()
            if frame is None:
                return
            try:
                oid, disp_id, args = wire.parse_event(frame.payload)
            except wire.ProtocolError:
                continue
            with self._pending_lock:
                subs = list(self._subs.get((oid, disp_id), ()))
            for sub in subs:
                sub._deliver(args)

    def _shutdown(self) -> None:
        if self._closed.is_set():
            return
        self._closed.set()
        with self._pending_lock:
            pending = list(self._pending.values())
            subs = [s for lst in self._subs.values() for s in lst]
            self._pending.clear()
            self._subs.clear()
        for inbox in pending:
            inbox.put(None)
        self._event_queue.put(None)
        for sub in subs:
            if sub.callback is None:
                sub.events.put(None)
        try:
            self._sock.close()
        except OSError:
            pass

    # --- public surface ---

    @property
    def closed(self) -> bool:
        return self._closed.is_set()

    def activate(self, prog_id: str) -> ObjectRef:
        reply = self._call(wire.MSG_ACTIVATE, wire.build_activate(prog_id))
        oid, interface = wire.parse_objref_ack(reply.payload)
        return ObjectRef(oid, interface)

    def invoke(self, ref: ObjectRef | int, disp_id: int,
               args: list[wire.WireValue] | None = None) -> wire.WireValue:
        oid = ref.object_id if isinstance(ref, ObjectRef) else ref
        reply = self._call(wire.MSG_INVOKE, wire.build_invoke(oid, disp_id, args or []))
        return wire.parse_result(reply.payload)

    def get_dispid(self, ref: ObjectRef | int, member_name: str) -> int:
        oid = ref.object_id if isinstance(ref, ObjectRef) else ref
        reply = self._call(wire.MSG_GETID, wire.build_getid(oid, member_name))
        return wire.parse_getid_ack(reply.payload)

    def subscribe(self, ref: ObjectRef, event_name: str, callback=None) -> Subscription:
        reply = self._call(wire.MSG_SUBSCRIBE,
                           wire.build_subscribe(ref.object_id, event_name))
        disp_id = wire.parse_subscribe_ack(reply.payload)
        sub = Subscription(ref, event_name, disp_id, callback)
        with self._pending_lock:
            self._subs.setdefault((ref.object_id, disp_id), []).append(sub)
        return sub

    def release(self, ref: ObjectRef | int) -> None:
        oid = ref.object_id if isinstance(ref, ObjectRef) else ref
        self._call(wire.MSG_RELEASE, wire.build_release(oid))
        with self._pending_lock:
            self._subs = {k: v for k, v in self._subs.items() if k[0] != oid}

    def ping(self) -> None:
        self._call(wire.MSG_PING)

    def reflect(self) -> str:
        reply = self._call(wire.MSG_REFLECT)
        return wire.parse_reflect_ack(reply.payload)

    def close(self) -> None:
        if not self._closed.is_set():
            try:
                self._send(wire.Frame(wire.MSG_BYE, 0))
            except SessionClosed:
                pass
        self._shutdown()

    def abort(self) -> None:
        """Drop the transport without BYE, as a dying process would."""
        try:
            self._sock.shutdown(socket.SHUT_RDWR)
        except OSError:
            pass
        self._shutdown()

    def __enter__(self) -> "Session":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def connect(host: str, port: int = DEFAULT_PORT, token: str = "",
            timeout: float = CALL_TIMEOUT) -> Session:
    sock = socket.create_connection((host, port), timeout=10.0)
    sock.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
    sock.settimeout(None)
    return Session(sock, token=token, timeout=timeout)


def connect_endpoint(endpoint: str, token: str = "",
                     timeout: float = CALL_TIMEOUT) -> Session:
    host, _, port = endpoint.rpartition(":")
    if not host:
        host, port = endpoint, str(DEFAULT_PORT)
    return connect(host, int(port), token=token, timeout=timeout)
