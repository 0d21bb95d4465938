"""Proxy generation: manifests from libraries, libraries from registries, stubs."""

from .manifest import (
    canonical_json,
    enum_names,
    generate_manifest,
    interface_map,
    load_manifest,
    manifest_hash,
    manifest_text,
)
from .reverse import reverse_generate
from .stubs import emit_stub_hooks, render_python, render_typescript

__all__ = [
    "canonical_json",
    "emit_stub_hooks",
    "enum_names",
    "generate_manifest",
    "interface_map",
    "load_manifest",
    "manifest_hash",
    "manifest_text",
    "render_python",
    "render_typescript",
    "reverse_generate",
]
