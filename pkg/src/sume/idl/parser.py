"""Recursive-descent parser for .sidl text libraries.

Recoverable errors are collected as diagnostics (line, column, message) and
parsing continues at the next declaration or member boundary, so one pass can
report several problems. A source either yields a model or diagnostics,
never both.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    PRIMITIVES,
    CoclassDef,
    EnumDef,
    EventDef,
    InterfaceDef,
    MethodDef,
    Param,
    PropertyDef,
    TypeLibrary,
)

KEYWORDS = {
    "library", "version", "enum", "interface", "coclass",
    "property", "method", "event", "readonly", "progid", "implements",
}

_PUNCT = set("{}();,=.")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class IdlParseError(ValueError):
    """Raised when a source fails to parse; carries all collected diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        head = "; ".join(str(d) for d in self.diagnostics[:3])
        more = f" (+{len(self.diagnostics) - 3} more)" if len(self.diagnostics) > 3 else ""
        super().__init__(f"invalid IDL: {head}{more}")


@dataclass(frozen=True)
class Token:
    kind: str   # ident | keyword | int | string | punct | eof
    text: str
    line: int
    column: int


def _tokenize(source: str, diags: list[Diagnostic]) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and source.startswith("//", i):
            while i < n and source[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isascii() and ch.isalpha():
            j = i
            while j < n and (source[j].isascii() and (source[j].isalnum() or source[j] == "_")):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and source[i + 1].isdigit()):
            j = i + 1
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            buf = []
            closed = False
            while j < n:
                c = source[j]
                if c == '"':
                    closed = True
                    j += 1
                    break
                if c == "\n":
                    break
                if c == "\\" and j + 1 < n:
                    esc = source[j + 1]
                    buf.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(esc, esc))
                    j += 2
                    continue
                buf.append(c)
                j += 1
            if not closed:
                diags.append(Diagnostic(start_line, start_col, "unterminated string"))
            tokens.append(Token("string", "".join(buf), start_line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        diags.append(Diagnostic(start_line, start_col, f"unexpected character {ch!r}"))
        i += 1
        col += 1
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], diags: list[Diagnostic]):
        self.tokens = tokens
        self.diags = diags
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, tok: Token, message: str) -> None:
        self.diags.append(Diagnostic(tok.line, tok.column, message))

    def expect(self, kind: str, text: str | None = None) -> Token | None:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.advance()
        want = text if text is not None else kind
        got = tok.text if tok.text else tok.kind
        self.error(tok, f"expected {want!r}, got {got!r}")
        return None

    def skip_to(self, *stops: str) -> None:
        """Panic-mode recovery: drop tokens until one of `stops` (consumed) or EOF."""
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                return
            self.advance()
            if tok.kind == "punct":
                if tok.text == "{":
                    depth += 1
                elif tok.text == "}":
                    if depth > 0:
                        depth -= 1
                        continue
                if depth == 0 and tok.text in stops:
                    return

    # --- grammar productions ---

    def library(self) -> TypeLibrary | None:
        if self.expect("keyword", "library") is None:
            return None
        name_tok = self.expect("ident")
        if self.expect("keyword", "version") is None:
            return None
        major = self.expect("int")
        self.expect("punct", ".")
        minor = self.expect("int")
        self.expect("punct", ";")
        if name_tok is None or major is None or minor is None:
            return None

        enums: list[EnumDef] = []
        interfaces: list[InterfaceDef] = []
        coclasses: list[CoclassDef] = []
        decl_order: list[tuple[str, Token]] = []
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind == "keyword" and tok.text == "enum":
                d = self.enum_decl()
                if d:
                    enums.append(d)
                    decl_order.append((d.name, tok))
            elif tok.kind == "keyword" and tok.text == "interface":
                d = self.interface_decl()
                if d:
                    interfaces.append(d)
                    decl_order.append((d.name, tok))
            elif tok.kind == "keyword" and tok.text == "coclass":
                d = self.coclass_decl()
                if d:
                    coclasses.append(d)
                    decl_order.append((d.name, tok))
            else:
                self.error(tok, f"expected declaration, got {tok.text or tok.kind!r}")
                self.skip_to(";", "}")

        seen: set[str] = set()
        for name, tok in decl_order:
            if name in seen:
                self.error(tok, f"duplicate top-level name {name!r}")
            seen.add(name)

        return TypeLibrary(
            name=name_tok.text,
            version=(int(major.text), int(minor.text)),
            enums=tuple(enums),
            interfaces=tuple(interfaces),
            coclasses=tuple(coclasses),
        )

    def enum_decl(self) -> EnumDef | None:
        self.advance()  # 'enum'
        name = self.expect("ident")
        if self.expect("punct", "{") is None:
            self.skip_to("}")
            return None
        entries: list[tuple[str, int]] = []
        names: set[str] = set()
        values: set[int] = set()
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                self.error(tok, "unterminated enum")
                break
            if tok.kind == "punct" and tok.text == "}":
                self.advance()
                break
            ent_name = self.expect("ident")
            if ent_name is None:
                self.skip_to(",", "}")
                if self.tokens[self.pos - 1].text == "}":
                    break
                continue
            self.expect("punct", "=")
            ent_val = self.expect("int")
            if ent_val is None:
                self.skip_to(",", "}")
                if self.tokens[self.pos - 1].text == "}":
                    break
                continue
            if ent_name.text in names:
                self.error(ent_name, f"duplicate enum entry {ent_name.text!r}")
            elif int(ent_val.text) in values:
                self.error(ent_val, f"enum value collision: {ent_val.text} already used")
            names.add(ent_name.text)
            values.add(int(ent_val.text))
            entries.append((ent_name.text, int(ent_val.text)))
            if self.peek().kind == "punct" and self.peek().text == ",":
                self.advance()
        if name is None:
            return None
        return EnumDef(name.text, tuple(entries))

    def type_ref(self) -> Token | None:
        tok = self.peek()
        if tok.kind == "ident" or (tok.kind == "keyword" and tok.text in PRIMITIVES):
            return self.advance()
        # primitives are plain identifiers to the lexer, so only idents reach here
        self.error(tok, f"expected type, got {tok.text or tok.kind!r}")
        return None

    def param_list(self) -> tuple[Param, ...] | None:
        if self.expect("punct", "(") is None:
            return None
        params: list[Param] = []
        names: set[str] = set()
        if self.peek().kind == "punct" and self.peek().text == ")":
            self.advance()
            return tuple(params)
        while True:
            ptype = self.type_ref()
            pname = self.expect("ident")
            if ptype is None or pname is None:
                self.skip_to(")", ";")
                return None
            if pname.text in names:
                self.error(pname, f"duplicate parameter name {pname.text!r}")
            names.add(pname.text)
            if ptype.text == "void":
                self.error(ptype, "parameter type cannot be void")
            params.append(Param(pname.text, ptype.text))
            tok = self.peek()
            if tok.kind == "punct" and tok.text == ",":
                self.advance()
                continue
            if tok.kind == "punct" and tok.text == ")":
                self.advance()
                return tuple(params)
            self.error(tok, f"expected ',' or ')', got {tok.text or tok.kind!r}")
            self.skip_to(")", ";")
            return None

    def interface_decl(self) -> InterfaceDef | None:
        self.advance()  # 'interface'
        name = self.expect("ident")
        if self.expect("punct", "{") is None:
            self.skip_to("}")
            return None
        members: list = []
        member_toks: list[Token] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                self.error(tok, "unterminated interface")
                break
            if tok.kind == "punct" and tok.text == "}":
                self.advance()
                break
            if tok.kind == "keyword" and tok.text == "property":
                self.advance()
                vtype = self.type_ref()
                pname = self.expect("ident")
                readonly = False
                if self.peek().kind == "keyword" and self.peek().text == "readonly":
                    self.advance()
                    readonly = True
                if self.expect("punct", ";") is None:
                    self.skip_to(";", "}")
                if vtype is None or pname is None:
                    continue
                if vtype.text == "void":
                    self.error(vtype, "property type cannot be void")
                members.append(PropertyDef(pname.text, vtype.text, readonly))
                member_toks.append(pname)
            elif tok.kind == "keyword" and tok.text == "method":
                self.advance()
                rtype = self.type_ref()
                mname = self.expect("ident")
                params = self.param_list()
                if self.expect("punct", ";") is None:
                    self.skip_to(";", "}")
                if rtype is None or mname is None or params is None:
                    continue
                members.append(MethodDef(mname.text, rtype.text, params))
                member_toks.append(mname)
            elif tok.kind == "keyword" and tok.text == "event":
                self.advance()
                ename = self.expect("ident")
                params = self.param_list()
                if self.expect("punct", ";") is None:
                    self.skip_to(";", "}")
                if ename is None or params is None:
                    continue
                members.append(EventDef(ename.text, params))
                member_toks.append(ename)
            else:
                self.error(tok, f"expected member, got {tok.text or tok.kind!r}")
                self.skip_to(";", "}")
                if self.tokens[self.pos - 1].text == "}":
                    break

        seen: set[str] = set()
        prop_names = {m.name for m in members if isinstance(m, PropertyDef)}
        for m, tok in zip(members, member_toks):
            if m.name in seen:
                self.error(tok, f"duplicate member {m.name!r}")
            seen.add(m.name)
            if isinstance(m, MethodDef):
                for p in prop_names:
                    if m.name in (f"get_{p}", f"set_{p}"):
                        self.error(tok, f"method {m.name!r} collides with property {p!r}")
        if name is None:
            return None
        return InterfaceDef(name.text, tuple(members))

    def coclass_decl(self) -> CoclassDef | None:
        self.advance()  # 'coclass'
        name = self.expect("ident")
        self.expect("keyword", "progid")
        prog_id = self.expect("string")
        if self.expect("punct", "{") is None:
            self.skip_to("}")
            return None
        interfaces: list[str] = []
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                self.error(tok, "unterminated coclass")
                break
            if tok.kind == "punct" and tok.text == "}":
                self.advance()
                break
            if self.expect("keyword", "implements") is None:
                self.skip_to(";", "}")
                if self.tokens[self.pos - 1].text == "}":
                    break
                continue
            itok = self.expect("ident")
            self.expect("punct", ";")
            if itok is not None:
                interfaces.append(itok.text)
        if name is None or prog_id is None:
            return None
        if not interfaces:
            self.error(name, f"coclass {name.text!r} implements no interfaces")
        return CoclassDef(name.text, prog_id.text, tuple(interfaces))


def _validate(lib: TypeLibrary, diags: list[Diagnostic]) -> None:
    """Whole-library checks that need every declaration in scope."""
    named = {e.name for e in lib.enums} | {i.name for i in lib.interfaces}
    iface_names = {i.name for i in lib.interfaces}

    def check_type(owner: str, t: str, interface_ok: bool = True) -> None:
        if t in PRIMITIVES or t in named:
            if not interface_ok and t in iface_names:
                diags.append(Diagnostic(0, 0, f"{owner}: event parameters cannot be interface-typed ({t})"))
            return
        diags.append(Diagnostic(0, 0, f"{owner}: unresolved type reference {t!r}"))

    for iface in lib.interfaces:
        for m in iface.members:
            where = f"{iface.name}.{m.name}"
            if isinstance(m, PropertyDef):
                check_type(where, m.value_type)
            elif isinstance(m, MethodDef):
                if m.return_type != "void":
                    check_type(where, m.return_type)
                for p in m.params:
                    check_type(where, p.type)
            else:
                for p in m.params:
                    check_type(where, p.type, interface_ok=False)

    prog_ids: set[str] = set()
    for c in lib.coclasses:
        if c.prog_id in prog_ids:
            diags.append(Diagnostic(0, 0, f"duplicate progid {c.prog_id!r}"))
        prog_ids.add(c.prog_id)
        for iname in c.interfaces:
            if iname not in iface_names:
                diags.append(Diagnostic(0, 0, f"coclass {c.name}: unknown interface {iname!r}"))
        if len(set(c.interfaces)) != len(c.interfaces):
            diags.append(Diagnostic(0, 0, f"coclass {c.name}: repeated interface"))


def validate_library(lib: TypeLibrary) -> list[Diagnostic]:
    """Whole-library semantic checks on an already-built model."""
    diags: list[Diagnostic] = []
    seen: set[str] = set()
    for name in ([e.name for e in lib.enums]
                 + [i.name for i in lib.interfaces]
                 + [c.name for c in lib.coclasses]):
        if name in seen:
            diags.append(Diagnostic(0, 0, f"duplicate top-level name {name!r}"))
        seen.add(name)
    _validate(lib, diags)
    return diags


def parse_idl(source: str) -> TypeLibrary:
    """Parse .sidl text into a validated TypeLibrary.

    Raises IdlParseError carrying every diagnostic found; arbitrary input
    never raises anything else.
    """
    diags: list[Diagnostic] = []
    tokens = _tokenize(source, diags)
    parser = _Parser(tokens, diags)
    lib = parser.library()
    if lib is not None:
        _validate(lib, diags)
    if diags or lib is None:
        if not diags:
            diags.append(Diagnostic(1, 1, "empty or unparseable library"))
        raise IdlParseError(diags)
    return lib
