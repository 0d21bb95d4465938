"""Canonical .sidl emission: declaration order, 4-space indent, LF endings.

Emission of any invariant-holding library reparses to a structurally equal
model, and emit(parse(emit(lib))) is byte-identical to emit(lib).
"""

from __future__ import annotations

from .model import EventDef, MethodDef, PropertyDef, TypeLibrary

_INDENT = "    "


def _escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def emit_idl(lib: TypeLibrary) -> str:
    out: list[str] = [f"library {lib.name} version {lib.version[0]}.{lib.version[1]};\n"]

    for e in lib.enums:
        out.append("\n")
        out.append(f"enum {e.name} {{\n")
        for name, value in e.entries:
            out.append(f"{_INDENT}{name} = {value},\n")
        out.append("}\n")

    for iface in lib.interfaces:
        out.append("\n")
        out.append(f"interface {iface.name} {{\n")
        for m in iface.members:
            out.append(f"{_INDENT}{_member_text(m)}\n")
        out.append("}\n")

    for c in lib.coclasses:
        out.append("\n")
        out.append(f'coclass {c.name} progid "{_escape(c.prog_id)}" {{\n')
        for iname in c.interfaces:
            out.append(f"{_INDENT}implements {iname};\n")
        out.append("}\n")

    return "".join(out)


def _member_text(m) -> str:
    if isinstance(m, PropertyDef):
        ro = " readonly" if m.readonly else ""
        return f"property {m.value_type} {m.name}{ro};"
    if isinstance(m, MethodDef):
        params = ", ".join(f"{p.type} {p.name}" for p in m.params)
        return f"method {m.return_type} {m.name}({params});"
    if isinstance(m, EventDef):
        params = ", ".join(f"{p.type} {p.name}" for p in m.params)
        return f"event {m.name}({params});"
    raise TypeError(f"not a member: {m!r}")
