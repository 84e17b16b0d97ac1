"""Syntax tree for the Java subset.

Nodes are frozen dataclasses. ``span`` is a ``(start, end)`` pair of
character offsets into the owning unit's text and is excluded from
equality, so ``==`` compares structure only.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional, Union

Span = tuple[int, int]


@dataclass(frozen=True)
class Node:
    span: Span = field(compare=False, repr=False)

    def children(self) -> Iterator["Node"]:
        for f in fields(self):
            if f.name == "span":
                continue
            value = getattr(self, f.name)
            if isinstance(value, Node):
                yield value
            elif isinstance(value, tuple):
                for item in value:
                    if isinstance(item, Node):
                        yield item

    def walk(self) -> Iterator["Node"]:
        """Preorder traversal including ``self``."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(list(node.children())))


@dataclass(frozen=True)
class TypeRef(Node):
    # source text with whitespace removed, e.g. "List<String>" or "int[]"
    name: str

    @property
    def simple_name(self) -> str:
        base = self.name.split("<", 1)[0]
        return base.rsplit(".", 1)[-1] + self.name[len(base):]


# ---------------------------------------------------------------- expressions


class Expr(Node):
    pass


@dataclass(frozen=True)
class Identifier(Expr):
    name: str


@dataclass(frozen=True)
class Literal(Expr):
    kind: str  # int, float, string, char, bool, null
    value: str  # source text


@dataclass(frozen=True)
class FieldAccess(Expr):
    target: Expr
    name: str


@dataclass(frozen=True)
class MethodCall(Expr):
    receiver: Optional[Expr]
    name: str
    args: tuple[Expr, ...]
    name_span: Span = field(compare=False, repr=False, default=(0, 0))


@dataclass(frozen=True)
class ArrayAccess(Expr):
    array: Expr
    index: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Unary(Expr):
    op: str
    operand: Expr
    postfix: bool = False


@dataclass(frozen=True)
class Assign(Expr):
    op: str  # "=" or a compound operator such as "+="
    target: Expr
    value: Expr


@dataclass(frozen=True)
class Conditional(Expr):
    cond: Expr
    then: Expr
    orelse: Expr


@dataclass(frozen=True)
class InstanceOf(Expr):
    expr: Expr
    type: TypeRef


@dataclass(frozen=True)
class New(Expr):
    type: TypeRef
    args: tuple[Expr, ...]


@dataclass(frozen=True)
class Cast(Expr):
    type: TypeRef
    expr: Expr


@dataclass(frozen=True)
class Paren(Expr):
    expr: Expr


# ----------------------------------------------------------------- statements


class Stmt(Node):
    pass


@dataclass(frozen=True)
class Declarator(Node):
    name: str
    init: Optional[Expr]
    name_span: Span = field(compare=False, repr=False, default=(0, 0))


@dataclass(frozen=True)
class Block(Stmt):
    stmts: tuple[Stmt, ...]


@dataclass(frozen=True)
class LocalVarDecl(Stmt):
    modifiers: tuple[str, ...]
    type: TypeRef
    declarators: tuple[Declarator, ...]

    @property
    def name(self) -> str:
        return self.declarators[0].name

    @property
    def init(self) -> Optional[Expr]:
        return self.declarators[0].init


@dataclass(frozen=True)
class ExprStmt(Stmt):
    expr: Expr


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: Stmt
    orelse: Optional[Stmt]


@dataclass(frozen=True)
class While(Stmt):
    cond: Expr
    body: Stmt


@dataclass(frozen=True)
class DoWhile(Stmt):
    body: Stmt
    cond: Expr


@dataclass(frozen=True)
class For(Stmt):
    init: tuple[Node, ...]  # LocalVarDecl or expressions
    cond: Optional[Expr]
    update: tuple[Expr, ...]
    body: Stmt


@dataclass(frozen=True)
class ForEach(Stmt):
    var: LocalVarDecl
    iterable: Expr
    body: Stmt


@dataclass(frozen=True)
class Return(Stmt):
    expr: Optional[Expr]


@dataclass(frozen=True)
class Throw(Stmt):
    expr: Expr


@dataclass(frozen=True)
class CatchClause(Node):
    types: tuple[TypeRef, ...]
    name: str
    body: Block


@dataclass(frozen=True)
class Try(Stmt):
    body: Block
    catches: tuple[CatchClause, ...]
    final: Optional[Block]


@dataclass(frozen=True)
class Break(Stmt):
    label: Optional[str]


@dataclass(frozen=True)
class Continue(Stmt):
    label: Optional[str]


@dataclass(frozen=True)
class Empty(Stmt):
    pass


# --------------------------------------------------------------- declarations


@dataclass(frozen=True)
class MethodDecl(Node):
    name: str
    params: tuple[tuple[str, str], ...]  # (type text, name)
    return_type: Optional[str]  # None for constructors
    body: Optional[Block]
    opaque: bool = False
    body_span: Optional[Span] = field(compare=False, repr=False, default=None)


@dataclass(frozen=True)
class FieldDecl(Node):
    text: str


@dataclass(frozen=True)
class TypeDecl(Node):
    kind: str  # class, interface, enum, @interface
    name: str
    members: tuple[Node, ...]

    def methods(self) -> Iterator[MethodDecl]:
        for m in self.members:
            if isinstance(m, MethodDecl):
                yield m
            elif isinstance(m, TypeDecl):
                yield from m.methods()


@dataclass(frozen=True)
class SourceUnit:
    path: str
    text: str
    decls: tuple[TypeDecl, ...]

    def methods(self) -> Iterator[MethodDecl]:
        for d in self.decls:
            yield from d.methods()

    def opaque_methods(self) -> list[MethodDecl]:
        return [m for m in self.methods() if m.opaque]

    def source(self, node: Union[Node, Span]) -> str:
        start, end = node if isinstance(node, tuple) else node.span
        return self.text[start:end]

    def line(self, offset: int) -> int:
        return self.text.count("\n", 0, offset) + 1


def dotted_name(expr: Node) -> Optional[str]:
    """``a.b.c`` for chains of field accesses over an identifier, else None."""
    parts: list[str] = []
    while isinstance(expr, FieldAccess):
        parts.append(expr.name)
        expr = expr.target
    if not isinstance(expr, Identifier):
        return None
    parts.append(expr.name)
    return ".".join(reversed(parts))


def strip_parens(expr: Expr) -> Expr:
    while isinstance(expr, Paren):
        expr = expr.expr
    return expr
