"""Front end for the catalog language: tokenizer, recursive-descent parser
and canonical printer.

Grammar::

    catalog        = { statement } ;
    statement      = section_decl | structure_decl ;
    section_decl   = "section" IDENT "color" STRING [ "merge-with" IDENT ] ;
    structure_decl = "structure" STRING "in" ident_list "{" { field } "}" ;
    ident_list     = IDENT { "," IDENT } ;
    field          = "types:" ref_list | "functions:" string_list
                   | "relations:" string_list | "properties:" string_list
                   | "wikipedia:" STRING | "representative" ;
    ref            = STRING [ "label" STRING ] [ "keep" ] ;

Strings are double quoted; ``\\"`` and ``\\\\`` are the only escapes, any
other backslash is literal. Strings may not span lines. ``#`` starts a
comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

from .model import Catalog, ExtensionRef, SectionDecl, SourcePos, StructureDef

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
COLOR_RE = re.compile(r"#[0-9A-Fa-f]{6}\Z")
_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*:?")

LIST_FIELDS = ("functions", "relations", "properties")


class ParseError(Exception):
    def __init__(self, line: int, column: int, message: str, snippet: str = ""):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message
        self.snippet = snippet

    def format(self, filename: str = "<input>") -> str:
        out = f"{filename}:{self.line}:{self.column}: error: {self.message}"
        if self.snippet:
            out += f"\n    {self.snippet}\n    {' ' * (self.column - 1)}^"
        return out


@dataclass(frozen=True)
class Token:
    kind: str  # WORD, STRING, COMMA, LBRACE, RBRACE, EOF
    text: str
    pos: SourcePos


class _Lexer:
    def __init__(self, source: str):
        self.src = source
        self.lines = source.split("\n")
        self.i = 0
        self.line = 1
        self.col = 1

    def error(self, pos: SourcePos, message: str) -> ParseError:
        snippet = self.lines[pos.line - 1] if pos.line <= len(self.lines) else ""
        return ParseError(pos.line, pos.column, message, snippet)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.src[self.i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.i += 1

    def tokens(self) -> Iterator[Token]:
        src = self.src
        while True:
            while self.i < len(src):
                ch = src[self.i]
                if ch.isspace():
                    self._advance()
                elif ch == "#":
                    while self.i < len(src) and src[self.i] != "\n":
                        self._advance()
                else:
                    break
            pos = SourcePos(self.line, self.col)
            if self.i >= len(src):
                yield Token("EOF", "", pos)
                return
            ch = src[self.i]
            if ch == ",":
                self._advance()
                yield Token("COMMA", ",", pos)
            elif ch == "{":
                self._advance()
                yield Token("LBRACE", "{", pos)
            elif ch == "}":
                self._advance()
                yield Token("RBRACE", "}", pos)
            elif ch == '"':
                yield Token("STRING", self._string(pos), pos)
            else:
                m = _WORD_RE.match(src, self.i)
                if m is None:
                    raise self.error(pos, f"unexpected character {ch!r}")
                self._advance(m.end() - m.start())
                yield Token("WORD", m.group(), pos)

    def _string(self, start: SourcePos) -> str:
        src = self.src
        self._advance()  # opening quote
        chars = []
        while True:
            if self.i >= len(src) or src[self.i] == "\n":
                raise self.error(start, "unterminated string")
            ch = src[self.i]
            if ch == '"':
                self._advance()
                return "".join(chars)
            if ch == "\\" and self.i + 1 < len(src) and src[self.i + 1] in '"\\':
                chars.append(src[self.i + 1])
                self._advance(2)
                continue
            chars.append(ch)
            self._advance()


class _Parser:
    def __init__(self, source: str):
        self.lexer = _Lexer(source)
        self.stream = self.lexer.tokens()
        self.tok = next(self.stream)

    def error(self, tok: Token, message: str) -> ParseError:
        return self.lexer.error(tok.pos, message)

    def advance(self) -> Token:
        tok = self.tok
        if tok.kind != "EOF":
            self.tok = next(self.stream)
        return tok

    @staticmethod
    def describe(tok: Token) -> str:
        if tok.kind == "EOF":
            return "end of input"
        if tok.kind == "STRING":
            return "string"
        return repr(tok.text)

    def expect(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise self.error(self.tok, f"expected {what}, found {self.describe(self.tok)}")
        return self.advance()

    def expect_word(self, word: str) -> Token:
        if self.tok.kind != "WORD" or self.tok.text != word:
            raise self.error(self.tok, f"expected '{word}', found {self.describe(self.tok)}")
        return self.advance()

    def ident(self, what: str) -> str:
        tok = self.tok
        if tok.kind != "WORD" or not IDENT_RE.match(tok.text):
            raise self.error(tok, f"expected {what}, found {self.describe(tok)}")
        self.advance()
        return tok.text

    def nonempty_string(self, what: str) -> str:
        tok = self.expect("STRING", what)
        if not tok.text:
            raise self.error(tok, f"{what} must not be empty")
        return tok.text

    def catalog(self) -> Catalog:
        sections: list[SectionDecl] = []
        structures: list[StructureDef] = []
        while self.tok.kind != "EOF":
            tok = self.tok
            if tok.kind == "WORD" and tok.text == "section":
                sections.append(self.section_decl())
            elif tok.kind == "WORD" and tok.text == "structure":
                structures.append(self.structure_decl())
            else:
                raise self.error(tok, f"expected 'section' or 'structure', found {self.describe(tok)}")
        return Catalog(tuple(sections), tuple(structures))

    def section_decl(self) -> SectionDecl:
        pos = self.advance().pos
        sid = self.ident("section identifier")
        self.expect_word("color")
        color_tok = self.expect("STRING", "color string")
        if not COLOR_RE.match(color_tok.text):
            raise self.error(color_tok, f"invalid color {color_tok.text!r}, expected #RRGGBB")
        merge = None
        if self.tok.kind == "WORD" and self.tok.text == "merge-with":
            self.advance()
            merge = self.ident("section identifier after 'merge-with'")
        return SectionDecl(sid, color_tok.text, merge, source_pos=pos)

    def structure_decl(self) -> StructureDef:
        pos = self.advance().pos
        name = self.nonempty_string("structure name")
        self.expect_word("in")
        sections = [self.ident("section identifier")]
        while self.tok.kind == "COMMA":
            self.advance()
            sections.append(self.ident("section identifier"))
        self.expect("LBRACE", "'{'")

        fields: dict = {}
        while self.tok.kind != "RBRACE":
            tok = self.tok
            if tok.kind == "EOF":
                raise self.error(tok, "expected '}' to close structure body, found end of input")
            if tok.kind != "WORD":
                raise self.error(tok, f"expected a field or '}}', found {self.describe(tok)}")
            key = tok.text.rstrip(":")
            if tok.text not in ("types:", "wikipedia:", "representative") and not (
                key in LIST_FIELDS and tok.text.endswith(":")
            ):
                raise self.error(tok, f"unknown field {tok.text!r}")
            if key in fields:
                raise self.error(tok, f"duplicate field {tok.text!r}")
            self.advance()
            if key == "types":
                fields[key] = self.ref_list()
            elif key == "wikipedia":
                fields[key] = self.expect("STRING", "URL string").text
            elif key == "representative":
                fields[key] = True
            else:
                fields[key] = self.string_list()
        self.advance()
        return StructureDef(
            name=name,
            sections=tuple(sections),
            types=fields.get("types", ()),
            functions=fields.get("functions", ()),
            relations=fields.get("relations", ()),
            properties=fields.get("properties", ()),
            wikipedia=fields.get("wikipedia", ""),
            representative=fields.get("representative", False),
            source_pos=pos,
        )

    def ref_list(self) -> tuple[ExtensionRef, ...]:
        refs = [self.ref()]
        while self.tok.kind == "COMMA":
            self.advance()
            refs.append(self.ref())
        return tuple(refs)

    def ref(self) -> ExtensionRef:
        target = self.nonempty_string("structure name")
        label = None
        keep = False
        if self.tok.kind == "WORD" and self.tok.text == "label":
            self.advance()
            label = self.expect("STRING", "label string").text
        if self.tok.kind == "WORD" and self.tok.text == "keep":
            self.advance()
            keep = True
        if self.tok.kind == "STRING":
            raise self.error(self.tok, "unexpected string; use ',' between entries or 'label' before a label")
        return ExtensionRef(target, label, keep)

    def string_list(self) -> tuple[str, ...]:
        items = [self.expect("STRING", "string").text]
        while self.tok.kind == "COMMA":
            self.advance()
            items.append(self.expect("STRING", "string").text)
        if self.tok.kind == "STRING":
            raise self.error(self.tok, "unexpected string; use ',' between entries")
        return tuple(items)


def parse_catalog(source: str) -> Catalog:
    """Parse catalog text. Raises ParseError at the first grammar violation."""
    return _Parser(source).catalog()


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _print_ref(ref: ExtensionRef) -> str:
    out = quote(ref.target)
    if ref.label is not None:
        out += " label " + quote(ref.label)
    if ref.keep:
        out += " keep"
    return out


def _fields(s: StructureDef) -> list[str]:
    out = []
    if s.types:
        out.append("types: " + ", ".join(_print_ref(r) for r in s.types))
    for key in LIST_FIELDS:
        values = getattr(s, key)
        if values:
            out.append(f"{key}: " + ", ".join(quote(v) for v in values))
    if s.wikipedia:
        out.append("wikipedia: " + quote(s.wikipedia))
    if s.representative:
        out.append("representative")
    return out


def print_catalog(catalog: Catalog) -> str:
    """Render a catalog as canonical source text.

    Structures with at most one field print on one line; longer bodies get
    one field per line with two-space indentation and are separated from
    neighbouring statements by a blank line.
    """
    blocks: list[tuple[bool, str]] = []
    for sec in catalog.sections:
        line = f"section {sec.id} color {quote(sec.color)}"
        if sec.merge_with is not None:
            line += f" merge-with {sec.merge_with}"
        blocks.append((False, line))
    for s in catalog.structures:
        head = f"structure {quote(s.name)} in {', '.join(s.sections)}"
        fields = _fields(s)
        if len(fields) <= 1:
            body = " ".join(["{", *fields, "}"])
            blocks.append((False, f"{head} {body}"))
        else:
            inner = "".join(f"  {f}\n" for f in fields)
            blocks.append((True, f"{head} {{\n{inner}}}"))

    out = []
    prev_multi = False
    for i, (multi, text) in enumerate(blocks):
        if i and (multi or prev_multi):
            out.append("")
        out.append(text)
        prev_multi = multi
    return "\n".join(out) + "\n" if out else ""


def parse_file(path) -> Catalog:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())

