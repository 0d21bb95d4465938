"""Language-neutral stub descriptions plus source renderers.

emit_stub_hooks() produces one call template per dispatchable member;
render_python() and render_typescript() turn a manifest into early-binding
proxy source for the SDK and the operator console's toolchain.
"""

from __future__ import annotations

import sys

from .manifest import enum_names, generate_manifest, manifest_text


def emit_stub_hooks(manifest: dict) -> dict[str, list[str]]:
    hooks: dict[str, list[str]] = {}
    for iface in manifest["interfaces"]:
        lines = []
        for m in iface["members"]:
            params = ", ".join(f"{p['name']}: {p['type']}" for p in m["params"])
            ret = "event" if m["kind"] == "event" else m["returns"]
            lines.append(f"{m['name']}({params}) -> {ret} dispatches (dispId={m['dispId']})")
        hooks[iface["name"]] = lines
    return hooks


_PY_HEADER = '''"""Early-binding proxies for the {library} library.

Generated from the library manifest (hash {hash}); do not edit by hand.
Regenerate with: python -m sume.proxygen.stubs <lib.sidl> --python
"""

from sume.sdk.runtime import ProxyBase

MANIFEST_HASH = "{hash}"
'''


def render_python(manifest: dict) -> str:
    out = [_PY_HEADER.format(library=manifest["library"], hash=manifest["contentHash"])]
    enums = enum_names(manifest)

    for e in manifest["enums"]:
        out.append(f"\n\nclass {e['name']}:")
        for name, value in sorted(e["values"].items(), key=lambda kv: kv[1]):
            out.append(f"\n    {name} = {value}")
        out.append("\n")

    out.append("\n\nclass _Base(ProxyBase):")
    out.append(f"\n    _enums = frozenset({sorted(enums)!r})")
    out.append("\n    _interfaces = {}")
    out.append("\n")

    for iface in manifest["interfaces"]:
        out.append(f"\n\nclass {iface['name']}(_Base):")
        out.append(f"\n    INTERFACE = {iface['name']!r}")
        for m in iface["members"]:
            args = [p["name"] for p in m["params"]]
            types = tuple(p["type"] for p in m["params"])
            if m["kind"] == "event":
                out.append(f"\n\n    def subscribe_{m['name']}(self, callback=None):")
                out.append(f"\n        return self._session.subscribe(self._ref, {m['name']!r}, callback)")
                continue
            sig = ", ".join(["self"] + args)
            arg_tuple = "(" + ", ".join(args) + ("," if len(args) == 1 else "") + ")"
            out.append(f"\n\n    def {m['name']}({sig}):")
            out.append(f"\n        return self._call({m['dispId']}, {types!r}, {arg_tuple}, {m['returns']!r})")
        out.append("\n")

    names = [i["name"] for i in manifest["interfaces"]]
    out.append("\n\n_Base._interfaces.update({")
    for name in names:
        out.append(f"\n    {name!r}: {name},")
    out.append("\n})")
    out.append("\n\nINTERFACES = _Base._interfaces")
    out.append("\n\nCOCLASSES = {")
    for c in manifest["coclasses"]:
        out.append(f"\n    {c['progId']!r}: {c['defaultInterface']!r},")
    out.append("\n}\n")
    return "".join(out)


_TS_TYPES = {
    "void": "void", "bool": "boolean", "i2": "number", "i4": "number",
    "i8": "bigint", "r4": "number", "r8": "number", "string": "string",
}


def _ts_type(name: str, manifest: dict) -> str:
    if name in _TS_TYPES:
        return _TS_TYPES[name]
    if name in enum_names(manifest):
        return "number"
    return "ObjRef"


def render_typescript(manifest: dict) -> str:
    out = [
        f"// Early-binding dispatch tables for the {manifest['library']} library.\n",
        f"// Generated from the library manifest (hash {manifest['contentHash']}); do not edit.\n",
        "\nexport interface ObjRef { objectId: number; interface: string }\n",
        "\nexport interface MemberRecord {\n",
        "  name: string; dispId: number; kind: 'get' | 'set' | 'method' | 'event';\n",
        "  params: { name: string; type: string }[]; returns: string;\n",
        "}\n",
        f"\nexport const MANIFEST_HASH = {manifest['contentHash']!r};\n",
    ]
    for e in manifest["enums"]:
        out.append(f"\nexport const {e['name']} = {{\n")
        for name, value in sorted(e["values"].items(), key=lambda kv: kv[1]):
            out.append(f"  {name}: {value},\n")
        out.append("} as const;\n")

    for iface in manifest["interfaces"]:
        methods = []
        for m in iface["members"]:
            params = ", ".join(
                f"{p['name']}: {_ts_type(p['type'], manifest)}" for p in m["params"])
            if m["kind"] == "event":
                methods.append(f"  // event {m['name']}({params}) dispId={m['dispId']}")
            else:
                ret = _ts_type(m["returns"], manifest)
                methods.append(f"  {m['name']}({params}): Promise<{ret}>;  // dispId={m['dispId']}")
        body = "\n".join(methods)
        out.append(f"\nexport interface {iface['name']}Proxy {{\n{body}\n}}\n")

    out.append("\nexport const DISPATCH: Record<string, MemberRecord[]> = {\n")
    for iface in manifest["interfaces"]:
        out.append(f"  {iface['name']}: [\n")
        for m in iface["members"]:
            params = ", ".join(
                "{ name: %r, type: %r }" % (p["name"], p["type"]) for p in m["params"])
            out.append(
                f"    {{ name: {m['name']!r}, dispId: {m['dispId']}, kind: {m['kind']!r}, "
                f"params: [{params}], returns: {m['returns']!r} }},\n")
        out.append("  ],\n")
    out.append("};\n")

    out.append("\nexport const COCLASSES: Record<string, string> = {\n")
    for c in manifest["coclasses"]:
        out.append(f"  {c['progId']!r}: {c['defaultInterface']!r},\n")
    out.append("};\n")
    return "".join(out)


def main(argv=None) -> int:
    args = list(sys.argv[1:] if argv is None else argv)
    if not args or args[0] in ("-h", "--help"):
        print("usage: python -m sume.proxygen.stubs <lib.sidl> [--python | --typescript | --manifest]")
        return 2
    from ..idl import parse_idl

    with open(args[0], encoding="utf-8") as f:
        lib = parse_idl(f.read())
    manifest = generate_manifest(lib)
    mode = args[1] if len(args) > 1 else "--python"
    if mode == "--python":
        sys.stdout.write(render_python(manifest))
    elif mode == "--typescript":
        sys.stdout.write(render_typescript(manifest))
    else:
        sys.stdout.write(manifest_text(manifest))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
