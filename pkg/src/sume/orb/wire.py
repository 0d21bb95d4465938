"""Wire representation for the remote-object protocol.

All integers are big-endian. A frame is a u32 body length followed by the
body: msgType u8, correlationId u32, then a type-specific payload. Values
are tagged: tag u8 followed by a tag-specific payload.

    VOID            (no payload)
    BOOL            u8, 0 or 1
    I2 / I4 / I8    signed big-endian 2/4/8 bytes
    R4 / R8         IEEE 754 big-endian 4/8 bytes
    STRING          u32 byte length + UTF-8
    OBJREF          u64 object id (nonzero) + STRING interface name
    ARRAY           u8 element tag + u32 count + element payloads (untagged)
    NULL            (no payload)
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

VOID = 0
BOOL = 1
I2 = 2
I4 = 3
I8 = 4
R4 = 5
R8 = 6
STRING = 7
OBJREF = 8
ARRAY = 9
NULL = 10

TAG_NAMES = {
    VOID: "void", BOOL: "bool", I2: "i2", I4: "i4", I8: "i8",
    R4: "r4", R8: "r8", STRING: "string", OBJREF: "objref",
    ARRAY: "array", NULL: "null",
}

MAX_FRAME = 16 * 1024 * 1024

# message types
MSG_HELLO = 0x01
MSG_HELLO_ACK = 0x02
MSG_ACTIVATE = 0x03
MSG_ACTIVATE_ACK = 0x04
MSG_INVOKE = 0x05
MSG_RESULT = 0x06
MSG_FAULT = 0x07
MSG_SUBSCRIBE = 0x08
MSG_SUBSCRIBE_ACK = 0x09
MSG_EVENT = 0x0A
MSG_RELEASE = 0x0B
MSG_RELEASE_ACK = 0x0C
MSG_PING = 0x0D
MSG_PONG = 0x0E
MSG_BYE = 0x0F
MSG_GETID = 0x10
MSG_GETID_ACK = 0x11
MSG_REFLECT = 0x12
MSG_REFLECT_ACK = 0x13

PROTOCOL_VERSION = 1

# fault codes
E_PROGID_UNKNOWN = 1
E_OBJECT_NOT_FOUND = 2
E_MEMBER_NOT_FOUND = 3
E_TYPE_MISMATCH = 4
E_APP_FAULT = 5
E_PROTOCOL = 6
E_ACCESS_DENIED = 7

FAULT_NAMES = {
    E_PROGID_UNKNOWN: "E_PROGID_UNKNOWN",
    E_OBJECT_NOT_FOUND: "E_OBJECT_NOT_FOUND",
    E_MEMBER_NOT_FOUND: "E_MEMBER_NOT_FOUND",
    E_TYPE_MISMATCH: "E_TYPE_MISMATCH",
    E_APP_FAULT: "E_APP_FAULT",
    E_PROTOCOL: "E_PROTOCOL",
    E_ACCESS_DENIED: "E_ACCESS_DENIED",
}


class ProtocolError(ValueError):
    """Malformed bytes at the framing or value layer."""


class BridgeFault(Exception):
    """A fault frame surfaced to the caller; message text crosses verbatim."""

    def __init__(self, code: int, message: str, detail: str = ""):
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)

    @property
    def code_name(self) -> str:
        return FAULT_NAMES.get(self.code, f"E_{self.code}")

    def __repr__(self) -> str:
        return f"BridgeFault({self.code_name}, {self.message!r})"


class AppFault(BridgeFault):
    """Component-level failure; the message reaches the client verbatim."""

    def __init__(self, message: str, detail: str = ""):
        super().__init__(E_APP_FAULT, message, detail)


_INT_RANGES = {
    I2: (-(1 << 15), (1 << 15) - 1),
    I4: (-(1 << 31), (1 << 31) - 1),
    I8: (-(1 << 63), (1 << 63) - 1),
}
_INT_FMT = {I2: ">h", I4: ">i", I8: ">q"}


class WireValue:
    """A tagged marshallable value. Equality is bit-exact for R4/R8."""

    __slots__ = ("tag", "value")

    def __init__(self, tag: int, value=None):
        if tag not in TAG_NAMES:
            raise ProtocolError(f"invalid tag {tag}")
        if tag in _INT_RANGES:
            lo, hi = _INT_RANGES[tag]
            if not isinstance(value, int) or not lo <= value <= hi:
                raise ValueError(f"{TAG_NAMES[tag]} out of range: {value!r}")
        elif tag == BOOL:
            if not isinstance(value, bool):
                raise ValueError(f"bool expected, got {value!r}")
        elif tag in (R4, R8):
            if not isinstance(value, float):
                raise ValueError(f"float expected, got {value!r}")
            if tag == R4:
                try:
                    struct.pack(">f", value)
                except OverflowError:
                    value = float("inf") if value > 0 else float("-inf")
        elif tag == STRING:
            if not isinstance(value, str):
                raise ValueError(f"str expected, got {value!r}")
        elif tag == OBJREF:
            oid, iface = value
            if not (isinstance(oid, int) and 0 < oid < (1 << 64)):
                raise ValueError(f"object id must be nonzero u64, got {oid!r}")
            if not isinstance(iface, str):
                raise ValueError("interface name must be str")
            value = (oid, iface)
        elif tag == ARRAY:
            elem_tag, items = value
            if elem_tag not in TAG_NAMES:
                raise ProtocolError(f"invalid element tag {elem_tag}")
            items = tuple(items)
            for it in items:
                if not isinstance(it, WireValue) or it.tag != elem_tag:
                    raise ValueError("array elements must share the element tag")
            value = (elem_tag, items)
        else:  # VOID, NULL
            value = None
        self.tag = tag
        self.value = value

    def __eq__(self, other) -> bool:
        if not isinstance(other, WireValue) or self.tag != other.tag:
            return NotImplemented if not isinstance(other, WireValue) else False
        if self.tag == R4:
            return struct.pack(">f", self.value) == struct.pack(">f", other.value)
        if self.tag == R8:
            return struct.pack(">d", self.value) == struct.pack(">d", other.value)
        return self.value == other.value

    def __hash__(self):
        if self.tag in (R4, R8):
            fmt = ">f" if self.tag == R4 else ">d"
            return hash((self.tag, struct.pack(fmt, self.value)))
        return hash((self.tag, self.value))

    def __repr__(self) -> str:
        if self.tag in (VOID, NULL):
            return TAG_NAMES[self.tag].upper()
        return f"{TAG_NAMES[self.tag]}({self.value!r})"


def void() -> WireValue:
    return WireValue(VOID)


def null() -> WireValue:
    return WireValue(NULL)


def boolean(v: bool) -> WireValue:
    return WireValue(BOOL, bool(v))


def i2(v: int) -> WireValue:
    return WireValue(I2, v)


def i4(v: int) -> WireValue:
    return WireValue(I4, v)


def i8(v: int) -> WireValue:
    return WireValue(I8, v)


def r4(v: float) -> WireValue:
    return WireValue(R4, float(v))


def r8(v: float) -> WireValue:
    return WireValue(R8, float(v))


def string(v: str) -> WireValue:
    return WireValue(STRING, v)


def objref(object_id: int, interface: str) -> WireValue:
    return WireValue(OBJREF, (object_id, interface))


def array(elem_tag: int, items) -> WireValue:
    return WireValue(ARRAY, (elem_tag, items))


# --- value codec ---


def _encode_payload(v: WireValue, out: bytearray) -> None:
    tag = v.tag
    if tag in (VOID, NULL):
        return
    if tag == BOOL:
        out.append(1 if v.value else 0)
    elif tag in _INT_FMT:
        out += struct.pack(_INT_FMT[tag], v.value)
    elif tag == R4:
        out += struct.pack(">f", v.value)
    elif tag == R8:
        out += struct.pack(">d", v.value)
    elif tag == STRING:
        raw = v.value.encode("utf-8")
        out += struct.pack(">I", len(raw))
        out += raw
    elif tag == OBJREF:
        oid, iface = v.value
        out += struct.pack(">Q", oid)
        raw = iface.encode("utf-8")
        out += struct.pack(">I", len(raw))
        out += raw
    elif tag == ARRAY:
        elem_tag, items = v.value
        out.append(elem_tag)
        out += struct.pack(">I", len(items))
        for it in items:
            _encode_payload(it, out)


def encode_value(v: WireValue) -> bytes:
    out = bytearray([v.tag])
    _encode_payload(v, out)
    return bytes(out)


class Reader:
    """Cursor over a frame body; every read is bounds-checked."""

    __slots__ = ("data", "pos")

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def take(self, n: int) -> bytes:
        if self.pos + n > len(self.data):
            raise ProtocolError("truncated input")
        chunk = self.data[self.pos:self.pos + n]
        self.pos += n
        return chunk

    def u8(self) -> int:
        return self.take(1)[0]

    def u16(self) -> int:
        return struct.unpack(">H", self.take(2))[0]

    def u32(self) -> int:
        return struct.unpack(">I", self.take(4))[0]

    def u64(self) -> int:
        return struct.unpack(">Q", self.take(8))[0]

    def utf8(self) -> str:
        n = self.u32()
        if n > MAX_FRAME:
            raise ProtocolError("string length exceeds frame limit")
        raw = self.take(n)
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ProtocolError(f"invalid UTF-8: {e}") from None

    def done(self) -> bool:
        return self.pos == len(self.data)


def _decode_payload(tag: int, r: Reader, depth: int) -> WireValue:
    if depth > 32:
        raise ProtocolError("value nesting too deep")
    if tag == VOID:
        return WireValue(VOID)
    if tag == NULL:
        return WireValue(NULL)
    if tag == BOOL:
        b = r.u8()
        if b not in (0, 1):
            raise ProtocolError(f"invalid bool byte {b}")
        return WireValue(BOOL, bool(b))
    if tag in _INT_FMT:
        return WireValue(tag, struct.unpack(_INT_FMT[tag], r.take(struct.calcsize(_INT_FMT[tag])))[0])
    if tag == R4:
        return WireValue(R4, struct.unpack(">f", r.take(4))[0])
    if tag == R8:
        return WireValue(R8, struct.unpack(">d", r.take(8))[0])
    if tag == STRING:
        return WireValue(STRING, r.utf8())
    if tag == OBJREF:
        oid = r.u64()
        iface = r.utf8()
        if oid == 0:
            raise ProtocolError("objref id is zero")
        return WireValue(OBJREF, (oid, iface))
    if tag == ARRAY:
        elem_tag = r.u8()
        if elem_tag not in TAG_NAMES:
            raise ProtocolError(f"invalid element tag {elem_tag}")
        count = r.u32()
        if count > MAX_FRAME:
            raise ProtocolError("array count exceeds frame limit")
        items = tuple(_decode_payload(elem_tag, r, depth + 1) for _ in range(count))
        return WireValue(ARRAY, (elem_tag, items))
    raise ProtocolError(f"invalid tag {tag}")


def read_value(r: Reader, depth: int = 0) -> WireValue:
    return _decode_payload(r.u8(), r, depth)


def decode_value(data: bytes) -> WireValue:
    """Strict decode of exactly one value; trailing bytes are an error."""
    r = Reader(data)
    v = read_value(r)
    if not r.done():
        raise ProtocolError("trailing bytes after value")
    return v


# --- framing ---


@dataclass(frozen=True)
class Frame:
    msg_type: int
    correlation_id: int
    payload: bytes = b""


def encode_frame(frame: Frame) -> bytes:
    body = struct.pack(">BI", frame.msg_type, frame.correlation_id) + frame.payload
    if len(body) > MAX_FRAME:
        raise ProtocolError("frame too large")
    return struct.pack(">I", len(body)) + body


def decode_body(body: bytes) -> Frame:
    if len(body) < 5:
        raise ProtocolError("frame body too short")
    msg_type, correlation_id = struct.unpack(">BI", body[:5])
    return Frame(msg_type, correlation_id, body[5:])


# --- message payload builders / parsers ---


def pack_string(s: str) -> bytes:
    raw = s.encode("utf-8")
    return struct.pack(">I", len(raw)) + raw


def build_hello(version: int = PROTOCOL_VERSION, token: str = "") -> bytes:
    return struct.pack(">B", version) + pack_string(token)


def parse_hello(payload: bytes) -> tuple[int, str]:
    r = Reader(payload)
    version = r.u8()
    token = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in hello")
    return version, token


def build_hello_ack(version: int) -> bytes:
    return struct.pack(">B", version)


def parse_hello_ack(payload: bytes) -> int:
    r = Reader(payload)
    v = r.u8()
    if not r.done():
        raise ProtocolError("trailing bytes in hello ack")
    return v


def build_activate(prog_id: str) -> bytes:
    return pack_string(prog_id)


def parse_activate(payload: bytes) -> str:
    r = Reader(payload)
    prog_id = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in activate")
    return prog_id


def build_objref_ack(object_id: int, interface: str) -> bytes:
    return struct.pack(">Q", object_id) + pack_string(interface)


def parse_objref_ack(payload: bytes) -> tuple[int, str]:
    r = Reader(payload)
    oid = r.u64()
    iface = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in activate ack")
    return oid, iface


def build_invoke(object_id: int, disp_id: int, args: list[WireValue]) -> bytes:
    out = bytearray(struct.pack(">QIH", object_id, disp_id, len(args)))
    for a in args:
        out += encode_value(a)
    return bytes(out)


def parse_invoke(payload: bytes) -> tuple[int, int, list[WireValue]]:
    r = Reader(payload)
    oid = r.u64()
    disp_id = r.u32()
    argc = r.u16()
    args = [read_value(r) for _ in range(argc)]
    if not r.done():
        raise ProtocolError("trailing bytes in invoke")
    return oid, disp_id, args


def build_result(value: WireValue) -> bytes:
    return encode_value(value)


def parse_result(payload: bytes) -> WireValue:
    return decode_value(payload)


def build_fault(code: int, message: str, detail: str = "") -> bytes:
    return struct.pack(">I", code) + pack_string(message) + pack_string(detail)


def parse_fault(payload: bytes) -> BridgeFault:
    r = Reader(payload)
    code = r.u32()
    message = r.utf8()
    detail = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in fault")
    return BridgeFault(code, message, detail)


def build_subscribe(object_id: int, event_name: str) -> bytes:
    return struct.pack(">Q", object_id) + pack_string(event_name)


def parse_subscribe(payload: bytes) -> tuple[int, str]:
    r = Reader(payload)
    oid = r.u64()
    name = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in subscribe")
    return oid, name


def build_subscribe_ack(disp_id: int) -> bytes:
    return struct.pack(">I", disp_id)


def parse_subscribe_ack(payload: bytes) -> int:
    r = Reader(payload)
    disp_id = r.u32()
    if not r.done():
        raise ProtocolError("trailing bytes in subscribe ack")
    return disp_id


def build_event(object_id: int, disp_id: int, args: list[WireValue]) -> bytes:
    return build_invoke(object_id, disp_id, args)


parse_event = parse_invoke


def build_release(object_id: int) -> bytes:
    return struct.pack(">Q", object_id)


def parse_release(payload: bytes) -> int:
    r = Reader(payload)
    oid = r.u64()
    if not r.done():
        raise ProtocolError("trailing bytes in release")
    return oid


def build_getid(object_id: int, member_name: str) -> bytes:
    return struct.pack(">Q", object_id) + pack_string(member_name)


def parse_getid(payload: bytes) -> tuple[int, str]:
    r = Reader(payload)
    oid = r.u64()
    name = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in getid")
    return oid, name


def build_getid_ack(disp_id: int) -> bytes:
    return struct.pack(">I", disp_id)


parse_getid_ack = parse_subscribe_ack


def build_reflect_ack(idl_text: str) -> bytes:
    return pack_string(idl_text)


def parse_reflect_ack(payload: bytes) -> str:
    r = Reader(payload)
    text = r.utf8()
    if not r.done():
        raise ProtocolError("trailing bytes in reflect ack")
    return text
