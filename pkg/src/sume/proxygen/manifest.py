"""Proxy manifest: a canonical, hashable description of a type library that
any client language can build proxies from.

The document is JSON with sorted keys; contentHash is the sha256 of the
canonical serialization without the hash field, so identical libraries pin
to identical hashes regardless of where they were parsed.
"""

from __future__ import annotations

import hashlib
import json

from ..idl import InterfaceDef, TypeLibrary, dispatch_slots


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _member_records(iface: InterfaceDef) -> list[dict]:
    records = []
    for slot in dispatch_slots(iface):
        records.append({
            "name": slot.name,
            "dispId": slot.disp_id,
            "kind": slot.kind,
            "params": [{"name": p.name, "type": p.type} for p in slot.params],
            "returns": slot.return_type,
        })
    return records


def generate_manifest(lib: TypeLibrary) -> dict:
    doc = {
        "library": lib.name,
        "version": {"major": lib.version[0], "minor": lib.version[1]},
        "enums": [
            {"name": e.name, "values": {name: value for name, value in e.entries}}
            for e in lib.enums
        ],
        "interfaces": [
            {"name": i.name, "members": _member_records(i)}
            for i in lib.interfaces
        ],
        "coclasses": [
            {
                "name": c.name,
                "progId": c.prog_id,
                "interfaces": list(c.interfaces),
                "defaultInterface": c.default_interface,
            }
            for c in lib.coclasses
        ],
    }
    doc["contentHash"] = manifest_hash(doc)
    return doc


def manifest_hash(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "contentHash"}
    digest = hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()
    return f"sha256:{digest}"


def manifest_text(doc: dict) -> str:
    return canonical_json(doc)


def load_manifest(text: str) -> dict:
    doc = json.loads(text)
    stated = doc.get("contentHash")
    actual = manifest_hash(doc)
    if stated != actual:
        raise ValueError(f"manifest hash mismatch: stated {stated}, actual {actual}")
    return doc


def interface_map(doc: dict) -> dict[str, dict]:
    return {i["name"]: i for i in doc["interfaces"]}


def enum_names(doc: dict) -> frozenset[str]:
    return frozenset(e["name"] for e in doc["enums"])
