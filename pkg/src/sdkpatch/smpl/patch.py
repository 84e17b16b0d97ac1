"""Semantic patch model and its text format.

Accepted syntax, one rule after another::

    @name@                  (or @@ for an anonymous rule)
    expression e1, e2;
    identifier i;
    type t;
    @@
     context statement      (no mark, optionally one leading space)
    - removed statement
    + added text
    ...

Context and removed lines are parsed as Java statements in which declared
metavariables appear as ordinary identifiers. Added lines are kept as text
templates because they may hold unbalanced braces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..errors import ParseError, PatchParseError, UndeclaredMetavar
from ..java.lexer import IDENT, KEYWORDS, OP, tokenize
from ..java.nodes import Stmt
from ..java.parser import parse_statements

CONTEXT = "context"
MINUS = "minus"
PLUS = "plus"
DOTS = "dots"

METAVAR_KINDS = ("expression", "identifier", "type")

_HEADER_RE = re.compile(r"^@\s*([A-Za-z_]\w*)?\s*@\s*$")
_PACKAGE_ROOTS = frozenset({"android", "androidx", "java", "javax", "com", "org", "kotlin"})


@dataclass(frozen=True)
class Metavar:
    kind: str
    name: str


@dataclass(frozen=True)
class PatchLine:
    mark: str
    text: str  # statement source for context/minus, template for plus, "..." for dots
    pattern: Optional[Stmt] = None
    line: int = 0

    @property
    def is_anchor(self) -> bool:
        return self.mark in (CONTEXT, MINUS)


@dataclass(frozen=True)
class PatchRule:
    name: str  # "" for an anonymous rule
    metavars: tuple[Metavar, ...]
    lines: tuple[PatchLine, ...]

    @property
    def metavar_kinds(self) -> dict[str, str]:
        return {m.name: m.kind for m in self.metavars}

    @property
    def anchors(self) -> list[PatchLine]:
        return [l for l in self.lines if l.is_anchor]

    def render(self) -> str:
        out = [f"@{self.name}@"]
        out.extend(f"{m.kind} {m.name};" for m in self.metavars)
        out.append("@@")
        for line in self.lines:
            if line.mark == DOTS:
                out.append("...")
            elif line.mark == PLUS:
                out.append(f"+ {line.text}" if line.text else "+")
            else:
                prefix = "- " if line.mark == MINUS else " "
                out.extend(prefix + part for part in line.text.split("\n"))
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class SemanticPatch:
    rules: tuple[PatchRule, ...]

    def render(self) -> str:
        return "\n".join(rule.render() for rule in self.rules)


def _parse_metadecl(text: str, line_no: int, kinds: dict[str, str]) -> list[Metavar]:
    out = []
    for decl in text.split(";"):
        decl = decl.strip()
        if not decl:
            continue
        kind, _, rest = decl.partition(" ")
        if kind not in METAVAR_KINDS:
            raise PatchParseError(line_no, f"unknown metavariable kind {kind!r}")
        names = [n.strip() for n in rest.split(",")]
        for name in names:
            if not re.fullmatch(r"[A-Za-z_$][\w$]*", name or ""):
                raise PatchParseError(line_no, f"bad metavariable name {name!r}")
            if name in kinds:
                raise PatchParseError(line_no, f"metavariable {name!r} declared twice")
            kinds[name] = kind
            out.append(Metavar(kind, name))
    if not text.rstrip().endswith(";"):
        raise PatchParseError(line_no, "metavariable declaration must end with ';'")
    return out


def _flush(group: list[tuple[int, str]], mark: str, lines: list[PatchLine]) -> None:
    if not group:
        return
    first_line = group[0][0]
    source = "\n".join(text for _, text in group)
    try:
        stmts = parse_statements(source)
    except ParseError as exc:
        line_no = first_line + source.count("\n", 0, exc.offset)
        raise PatchParseError(line_no, f"not a statement pattern ({exc})") from None
    if not stmts:
        raise PatchParseError(first_line, "empty statement pattern")
    for stmt in stmts:
        text = source[stmt.span[0] : stmt.span[1]]
        lines.append(PatchLine(mark, text, stmt, first_line + source.count("\n", 0, stmt.span[0])))
    group.clear()


def _check_plus_references(rule_lines: list[PatchLine], kinds: dict[str, str]) -> None:
    """Reject unknown identifiers in added code.

    Known names come from the metavariable declarations and the anchor
    lines. Names the added code declares count too, as do class references.
    """
    known = set(kinds) | set(KEYWORDS)
    for line in rule_lines:
        if line.is_anchor:
            known.update(t.text for t in tokenize(line.text) if t.kind == IDENT)
    plus_tokens = [(line, tokenize(line.text)[:-1]) for line in rule_lines if line.mark == PLUS]
    for _, toks in plus_tokens:
        for i in range(1, len(toks) - 1):
            prev, tok, nxt = toks[i - 1], toks[i], toks[i + 1]
            declares = prev.kind == IDENT or prev.text in (">", "]")
            if tok.kind == IDENT and declares and nxt.text in ("=", ";", ",", ":"):
                known.add(tok.text)
    for line, toks in plus_tokens:
        for i, tok in enumerate(toks):
            if tok.kind != IDENT or tok.text in known:
                continue
            prev = toks[i - 1] if i else None
            nxt = toks[i + 1] if i + 1 < len(toks) else None
            if prev is not None and prev.kind == OP and prev.text in (".", "@"):
                continue  # member name
            if nxt is not None and nxt.text == "(":
                continue  # unqualified method name
            if nxt is not None and nxt.text == "." and (tok.text[:1].isupper() or tok.text in _PACKAGE_ROOTS):
                continue  # class or package reference
            if nxt is not None and (nxt.kind == IDENT or nxt.text == "<"):
                continue  # a type in a declaration
            raise UndeclaredMetavar(tok.text, line.line)


def parse_patch(text: str) -> SemanticPatch:
    rules: list[PatchRule] = []
    raw = text.splitlines()
    i = 0
    n = len(raw)
    while i < n:
        stripped = raw[i].strip()
        if not stripped or stripped.startswith("//"):
            i += 1
            continue
        header = _HEADER_RE.match(stripped)
        if header is None:
            raise PatchParseError(i + 1, "expected a rule header '@name@'")
        name = header.group(1) or ""
        i += 1
        kinds: dict[str, str] = {}
        metavars: list[Metavar] = []
        while True:
            if i >= n:
                raise PatchParseError(i, "missing '@@' closing the metavariable declarations")
            line = raw[i].strip()
            i += 1
            if line == "@@":
                break
            if line:
                metavars.extend(_parse_metadecl(line, i, kinds))
        lines: list[PatchLine] = []
        group: list[tuple[int, str]] = []
        group_mark: Optional[str] = None
        while i < n and not _HEADER_RE.match(raw[i].strip()):
            line = raw[i]
            line_no = i + 1
            i += 1
            if line.startswith("+"):
                _flush(group, group_mark, lines)
                lines.append(PatchLine(PLUS, line[1:].strip(), None, line_no))
                continue
            if line.startswith("-"):
                mark, body = MINUS, line[1:]
            elif line.strip() == "...":
                _flush(group, group_mark, lines)
                if lines and lines[-1].mark == DOTS:
                    raise PatchParseError(line_no, "consecutive '...' lines")
                lines.append(PatchLine(DOTS, "...", None, line_no))
                continue
            elif not line.strip() or line.strip().startswith("//"):
                continue
            else:
                mark, body = CONTEXT, line
            if group and group_mark != mark:
                _flush(group, group_mark, lines)
            group_mark = mark
            group.append((line_no, body.strip()))
        _flush(group, group_mark, lines)
        if not any(l.is_anchor for l in lines):
            raise PatchParseError(i, f"rule {name or '<anonymous>'} has no context or removed line to match")
        _check_plus_references(lines, kinds)
        if name and any(r.name == name for r in rules):
            raise PatchParseError(i, f"duplicate rule name {name!r}")
        rules.append(PatchRule(name, tuple(metavars), tuple(lines)))
    if not rules:
        raise PatchParseError(1, "no rules")
    return SemanticPatch(tuple(rules))
