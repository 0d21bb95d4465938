"""Object model for the .sidl interface definition language.

A library is a flat namespace of enums, interfaces and coclasses. Member
dispatch ids are implicit: they are assigned densely from 1 in declaration
order, with a read-write property taking two consecutive ids (getter first).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

PRIMITIVES = ("void", "bool", "i2", "i4", "i8", "r4", "r8", "string")

KIND_GET = "get"
KIND_SET = "set"
KIND_METHOD = "method"
KIND_EVENT = "event"


@dataclass(frozen=True)
class Param:
    name: str
    type: str


@dataclass(frozen=True)
class PropertyDef:
    name: str
    value_type: str
    readonly: bool = False


@dataclass(frozen=True)
class MethodDef:
    name: str
    return_type: str
    params: tuple[Param, ...] = ()


@dataclass(frozen=True)
class EventDef:
    name: str
    params: tuple[Param, ...] = ()


Member = Union[PropertyDef, MethodDef, EventDef]


@dataclass(frozen=True)
class EnumDef:
    name: str
    entries: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class InterfaceDef:
    name: str
    members: tuple[Member, ...] = ()


@dataclass(frozen=True)
class CoclassDef:
    name: str
    prog_id: str
    interfaces: tuple[str, ...] = ()

    @property
    def default_interface(self) -> str:
        return self.interfaces[0]


@dataclass(frozen=True)
class TypeLibrary:
    name: str
    version: tuple[int, int] = (1, 0)
    enums: tuple[EnumDef, ...] = ()
    interfaces: tuple[InterfaceDef, ...] = ()
    coclasses: tuple[CoclassDef, ...] = ()

    def enum(self, name: str) -> EnumDef:
        for e in self.enums:
            if e.name == name:
                return e
        raise KeyError(name)

    def interface(self, name: str) -> InterfaceDef:
        for i in self.interfaces:
            if i.name == name:
                return i
        raise UnknownInterfaceError(name)

    def coclass_by_progid(self, prog_id: str) -> CoclassDef:
        for c in self.coclasses:
            if c.prog_id == prog_id:
                return c
        raise KeyError(prog_id)

    def kind_of(self, type_name: str) -> str:
        """Classify a type reference: 'primitive', 'enum' or 'interface'."""
        if type_name in PRIMITIVES:
            return "primitive"
        for e in self.enums:
            if e.name == type_name:
                return "enum"
        for i in self.interfaces:
            if i.name == type_name:
                return "interface"
        raise KeyError(type_name)


class UnknownInterfaceError(LookupError):
    pass


class UnknownDispatchIdError(LookupError):
    pass


@dataclass(frozen=True)
class Slot:
    """One dispatch-table entry: an invokable accessor of an interface member."""

    disp_id: int
    name: str            # accessor name: get_X / set_X / method or event name
    kind: str            # get | set | method | event
    member: Member

    @property
    def param_types(self) -> tuple[str, ...]:
        if self.kind == KIND_GET:
            return ()
        if self.kind == KIND_SET:
            return (self.member.value_type,)
        return tuple(p.type for p in self.member.params)

    @property
    def params(self) -> tuple[Param, ...]:
        if self.kind == KIND_GET:
            return ()
        if self.kind == KIND_SET:
            return (Param("value", self.member.value_type),)
        return self.member.params

    @property
    def return_type(self) -> str:
        if self.kind == KIND_GET:
            return self.member.value_type
        if self.kind == KIND_METHOD:
            return self.member.return_type
        return "void"


def dispatch_slots(iface: InterfaceDef) -> tuple[Slot, ...]:
    """Expand members into dense dispatch slots, ids from 1 in declaration order.

    Properties expand to get_X (and set_X unless readonly), consuming
    consecutive ids; methods and events consume one id under their own name.
    """
    slots: list[Slot] = []
    next_id = 1
    for m in iface.members:
        if isinstance(m, PropertyDef):
            slots.append(Slot(next_id, f"get_{m.name}", KIND_GET, m))
            next_id += 1
            if not m.readonly:
                slots.append(Slot(next_id, f"set_{m.name}", KIND_SET, m))
                next_id += 1
        elif isinstance(m, MethodDef):
            slots.append(Slot(next_id, m.name, KIND_METHOD, m))
            next_id += 1
        else:
            slots.append(Slot(next_id, m.name, KIND_EVENT, m))
            next_id += 1
    return tuple(slots)


def dispatch_table(iface: InterfaceDef) -> dict[int, Slot]:
    return {s.disp_id: s for s in dispatch_slots(iface)}


def name_table(iface: InterfaceDef) -> dict[str, Slot]:
    return {s.name: s for s in dispatch_slots(iface)}


def resolve_member(lib: TypeLibrary, interface: str, disp_id: int) -> Slot:
    """Find the member slot owning a dispatch id on an interface of `lib`."""
    iface = lib.interface(interface)
    table = dispatch_table(iface)
    if disp_id not in table:
        raise UnknownDispatchIdError(f"{interface} has no dispatch id {disp_id}")
    return table[disp_id]
