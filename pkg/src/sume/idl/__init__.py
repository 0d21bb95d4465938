"""Text interface-definition language (.sidl): parse, validate, emit, dispatch."""

from .emitter import emit_idl
from .model import (
    KIND_EVENT,
    KIND_GET,
    KIND_METHOD,
    KIND_SET,
    PRIMITIVES,
    CoclassDef,
    EnumDef,
    EventDef,
    InterfaceDef,
    MethodDef,
    Param,
    PropertyDef,
    Slot,
    TypeLibrary,
    UnknownDispatchIdError,
    UnknownInterfaceError,
    dispatch_slots,
    dispatch_table,
    name_table,
    resolve_member,
)
from .parser import Diagnostic, IdlParseError, parse_idl, validate_library

__all__ = [
    "CoclassDef",
    "Diagnostic",
    "EnumDef",
    "EventDef",
    "IdlParseError",
    "InterfaceDef",
    "KIND_EVENT",
    "KIND_GET",
    "KIND_METHOD",
    "KIND_SET",
    "MethodDef",
    "PRIMITIVES",
    "Param",
    "PropertyDef",
    "Slot",
    "TypeLibrary",
    "UnknownDispatchIdError",
    "UnknownInterfaceError",
    "dispatch_slots",
    "dispatch_table",
    "emit_idl",
    "name_table",
    "parse_idl",
    "resolve_member",
    "validate_library",
]
