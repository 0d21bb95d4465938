"""Client-side proxy machinery.

Early binding: proxy classes carry dispatch ids taken from a manifest
(either the generated module shipped with the SDK or classes built at
runtime with build_proxy_classes). Late binding: LateBound looks member
names up over the wire first and caches the ids.
"""

from __future__ import annotations

from ..orb import ObjectRef, Session, wire

_TO_WIRE = {
    "bool": lambda v: wire.boolean(v),
    "i2": lambda v: wire.i2(int(v)),
    "i4": lambda v: wire.i4(int(v)),
    "i8": lambda v: wire.i8(int(v)),
    "r4": lambda v: wire.r4(float(v)),
    "r8": lambda v: wire.r8(float(v)),
    "string": lambda v: wire.string(v),
}


def to_wire(value, type_name: str, enums: frozenset[str]) -> wire.WireValue:
    if isinstance(value, wire.WireValue):
        return value
    if type_name in _TO_WIRE:
        return _TO_WIRE[type_name](value)
    if type_name in enums:
        return wire.i4(int(value))
    # interface-typed parameter
    if value is None:
        return wire.null()
    ref = value.ref if isinstance(value, ProxyBase) else value
    return wire.objref(ref.object_id, ref.interface)


def from_wire(value: wire.WireValue, session: Session, interfaces: dict[str, type]):
    if value.tag in (wire.VOID, wire.NULL):
        return None
    if value.tag == wire.OBJREF:
        oid, iface = value.value
        ref = ObjectRef(oid, iface)
        cls = interfaces.get(iface)
        return cls(session, ref) if cls is not None else ref
    if value.tag == wire.ARRAY:
        return [from_wire(v, session, interfaces) for v in value.value[1]]
    return value.value


class ProxyBase:
    INTERFACE = ""
    _enums: frozenset[str] = frozenset()
    _interfaces: dict[str, type] = {}

    def __init__(self, session: Session, ref: ObjectRef):
        self._session = session
        self._ref = ref

    @property
    def ref(self) -> ObjectRef:
        return self._ref

    @property
    def object_id(self) -> int:
        return self._ref.object_id

    def _call(self, disp_id: int, param_types, args, return_type: str):
        wired = [to_wire(a, t, self._enums) for a, t in zip(args, param_types)]
        result = self._session.invoke(self._ref, disp_id, wired)
        return from_wire(result, self._session, self._interfaces)

    def release(self) -> None:
        self._session.release(self._ref)

    def __repr__(self):
        return f"<{type(self).__name__} proxy for object {self._ref.object_id}>"


def build_proxy_classes(manifest: dict) -> dict[str, type]:
    """Construct early-binding proxy classes straight from a manifest."""
    enums = frozenset(e["name"] for e in manifest["enums"])
    interfaces: dict[str, type] = {}

    for iface in manifest["interfaces"]:
        namespace = {
            "INTERFACE": iface["name"],
            "_enums": enums,
            "_interfaces": interfaces,
        }
        for member in iface["members"]:
            namespace[_method_key(member)] = _make_method(member)
        interfaces[iface["name"]] = type(iface["name"], (ProxyBase,), namespace)
    return interfaces


def _method_key(member: dict) -> str:
    return f"subscribe_{member['name']}" if member["kind"] == "event" else member["name"]


def _make_method(member: dict):
    if member["kind"] == "event":
        name = member["name"]

        def subscribe(self, callback=None):
            return self._session.subscribe(self._ref, name, callback)

        subscribe.__name__ = f"subscribe_{name}"
        return subscribe

    disp_id = member["dispId"]
    types = tuple(p["type"] for p in member["params"])
    returns = member["returns"]

    def method(self, *args):
        if len(args) != len(types):
            raise TypeError(f"{member['name']} takes {len(types)} arguments, got {len(args)}")
        return self._call(disp_id, types, args, returns)

    method.__name__ = member["name"]
    return method


class LateBound:
    """Name-first proxy: each member resolves once via the wire, then caches.

    Arguments must be WireValue instances (or plain values, converted by the
    native default mapping: bool, int -> i4, float -> r8, str)."""

    def __init__(self, session: Session, ref: ObjectRef):
        self._session = session
        self._ref = ref
        self._ids: dict[str, int] = {}

    @property
    def ref(self) -> ObjectRef:
        return self._ref

    def _default_wire(self, value) -> wire.WireValue:
        if isinstance(value, wire.WireValue):
            return value
        if value is None:
            return wire.null()
        if isinstance(value, bool):
            return wire.boolean(value)
        if isinstance(value, int):
            return wire.i4(value)
        if isinstance(value, float):
            return wire.r8(value)
        if isinstance(value, str):
            return wire.string(value)
        if isinstance(value, ObjectRef):
            return wire.objref(value.object_id, value.interface)
        raise TypeError(f"cannot marshal {value!r}")

    def __getattr__(self, name: str):
        if name.startswith("_"):
            raise AttributeError(name)

        def call(*args):
            disp_id = self._ids.get(name)
            if disp_id is None:
                disp_id = self._session.get_dispid(self._ref, name)
                self._ids[name] = disp_id
            wired = [self._default_wire(a) for a in args]
            result = self._session.invoke(self._ref, disp_id, wired)
            if result.tag == wire.OBJREF:
                return LateBound(self._session, ObjectRef(*result.value))
            if result.tag in (wire.VOID, wire.NULL):
                return None
            return result.value

        call.__name__ = name
        return call
