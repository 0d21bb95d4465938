"""Server-side component registry: activation factories plus the dispatch
metadata (interfaces, enums, coclasses) the server answers invokes and
reflection requests from.

The registry stores decomposed registration metadata rather than the source
text, so a type library can be regenerated from a running server alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..idl import (
    CoclassDef,
    EnumDef,
    InterfaceDef,
    Slot,
    TypeLibrary,
    dispatch_table,
    name_table,
)


@dataclass(frozen=True)
class CoclassEntry:
    name: str
    prog_id: str
    interfaces: tuple[str, ...]
    factory: Callable[[], object]

    @property
    def default_interface(self) -> str:
        return self.interfaces[0]


class ComponentRegistry:
    def __init__(self, library_name: str, version: tuple[int, int] = (1, 0)):
        self.library_name = library_name
        self.version = version
        self._enums: dict[str, EnumDef] = {}
        self._interfaces: dict[str, InterfaceDef] = {}
        self._coclasses: dict[str, CoclassEntry] = {}   # keyed by progId
        self._by_id: dict[str, dict[int, Slot]] = {}
        self._by_name: dict[str, dict[str, Slot]] = {}

    def add_enum(self, enum: EnumDef) -> None:
        self._enums[enum.name] = enum

    def add_interface(self, iface: InterfaceDef) -> None:
        self._interfaces[iface.name] = iface
        self._by_id[iface.name] = dispatch_table(iface)
        self._by_name[iface.name] = name_table(iface)

    def add_coclass(self, coclass: CoclassDef, factory: Callable[[], object]) -> None:
        if coclass.prog_id in self._coclasses:
            raise ValueError(f"progid {coclass.prog_id!r} already registered")
        self._coclasses[coclass.prog_id] = CoclassEntry(
            coclass.name, coclass.prog_id, coclass.interfaces, factory)

    @classmethod
    def from_library(cls, lib: TypeLibrary,
                     factories: dict[str, Callable[[], object]]) -> "ComponentRegistry":
        reg = cls(lib.name, lib.version)
        for e in lib.enums:
            reg.add_enum(e)
        for i in lib.interfaces:
            reg.add_interface(i)
        for c in lib.coclasses:
            if c.prog_id not in factories:
                raise ValueError(f"no factory for progid {c.prog_id!r}")
            reg.add_coclass(c, factories[c.prog_id])
        return reg

    # --- activation and dispatch ---

    def activate(self, prog_id: str) -> tuple[object, str]:
        entry = self._coclasses.get(prog_id)
        if entry is None:
            raise KeyError(prog_id)
        return entry.factory(), entry.default_interface

    def has_interface(self, name: str) -> bool:
        return name in self._interfaces

    def slot(self, interface: str, disp_id: int) -> Slot | None:
        return self._by_id.get(interface, {}).get(disp_id)

    def slot_by_name(self, interface: str, name: str) -> Slot | None:
        return self._by_name.get(interface, {}).get(name)

    def kind_of_type(self, type_name: str) -> str:
        if type_name in ("void", "bool", "i2", "i4", "i8", "r4", "r8", "string"):
            return "primitive"
        if type_name in self._enums:
            return "enum"
        if type_name in self._interfaces:
            return "interface"
        raise KeyError(type_name)

    # --- metadata views (declaration order preserved) ---

    @property
    def enums(self) -> tuple[EnumDef, ...]:
        return tuple(self._enums.values())

    @property
    def interfaces(self) -> tuple[InterfaceDef, ...]:
        return tuple(self._interfaces.values())

    @property
    def coclasses(self) -> tuple[CoclassEntry, ...]:
        return tuple(self._coclasses.values())
