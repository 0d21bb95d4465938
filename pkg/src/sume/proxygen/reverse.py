"""Regenerate a type library from a running server's registration metadata.

The server keeps interfaces, enums and coclass entries in declaration order,
so the rebuilt library is structurally equal to the one it booted from;
equivalence is at the interface level, not at the source-text level.
"""

from __future__ import annotations

from ..idl import CoclassDef, TypeLibrary
from ..idl.parser import IdlParseError, validate_library


def reverse_generate(registry) -> TypeLibrary:
    coclasses = registry.coclasses
    if not coclasses:
        raise ValueError("registry has no coclasses to describe")
    lib = TypeLibrary(
        name=registry.library_name,
        version=registry.version,
        enums=registry.enums,
        interfaces=registry.interfaces,
        coclasses=tuple(
            CoclassDef(c.name, c.prog_id, c.interfaces) for c in coclasses
        ),
    )
    diags = validate_library(lib)
    if diags:
        raise IdlParseError(diags)
    return lib
