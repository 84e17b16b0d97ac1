"""Statement walking and API call-site discovery."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Optional

from .nodes import (
    Binary,
    Block,
    Conditional,
    DoWhile,
    Expr,
    ExprStmt,
    For,
    ForEach,
    If,
    LocalVarDecl,
    MethodCall,
    MethodDecl,
    Node,
    Return,
    SourceUnit,
    Stmt,
    Throw,
    Try,
    While,
    Assign,
)

if TYPE_CHECKING:
    from ..mapping import ApiMapping

STANDALONE = "standalone-stmt"
ASSIGNMENT_RHS = "assignment-rhs"
SUBEXPRESSION = "subexpression"


@dataclass(frozen=True)
class StmtContext:
    """A statement plus where it sits.

    ``field`` is ``"stmts"`` when the statement is an element of a block's
    statement list (``parent`` is the Block, ``index`` its position);
    otherwise it names the slot of ``parent`` holding it, e.g. ``"then"``.
    """

    stmt: Stmt
    path: tuple
    parent: Optional[Node]
    field: str
    index: int
    ancestors: tuple[Stmt, ...]

    @property
    def in_block(self) -> bool:
        return self.field == "stmts"


def iter_statements(body: Block) -> Iterator[StmtContext]:
    """Preorder walk of every statement under ``body`` (excluding body itself)."""

    def visit(stmt: Stmt, path: tuple, parent: Node, field: str, index: int, ancestors: tuple):
        yield StmtContext(stmt, path, parent, field, index, ancestors)
        inner = ancestors + (stmt,)
        for name, child_index, child in _child_statements(stmt):
            child_path = path + ((name, child_index) if child_index >= 0 else (name,))
            yield from visit(child, child_path, stmt, name, child_index, inner)

    for i, stmt in enumerate(body.stmts):
        yield from visit(stmt, ("stmts", i), body, "stmts", i, ())


def _child_statements(stmt: Stmt) -> Iterator[tuple[str, int, Stmt]]:
    if isinstance(stmt, Block):
        for i, s in enumerate(stmt.stmts):
            yield "stmts", i, s
    elif isinstance(stmt, If):
        yield "then", -1, stmt.then
        if stmt.orelse is not None:
            yield "orelse", -1, stmt.orelse
    elif isinstance(stmt, (While, For, ForEach, DoWhile)):
        yield "body", -1, stmt.body
    elif isinstance(stmt, Try):
        yield "body", -1, stmt.body
        for i, c in enumerate(stmt.catches):
            yield "catch", i, c.body
        if stmt.final is not None:
            yield "final", -1, stmt.final


def direct_exprs(stmt: Stmt) -> Iterator[tuple[Expr, bool]]:
    """Expressions owned by ``stmt`` itself (not by nested statements).

    The flag is True when the expression is evaluated conditionally or
    repeatedly relative to the statement's start, so hoisting it in front of
    the statement would change behaviour.
    """
    if isinstance(stmt, LocalVarDecl):
        for d in stmt.declarators:
            if d.init is not None:
                yield d.init, False
    elif isinstance(stmt, ExprStmt):
        yield stmt.expr, False
    elif isinstance(stmt, If):
        yield stmt.cond, False
    elif isinstance(stmt, (While, DoWhile)):
        yield stmt.cond, True
    elif isinstance(stmt, For):
        for node in stmt.init:
            if isinstance(node, LocalVarDecl):
                for d in node.declarators:
                    if d.init is not None:
                        yield d.init, True
            else:
                yield node, True
        if stmt.cond is not None:
            yield stmt.cond, True
        for e in stmt.update:
            yield e, True
    elif isinstance(stmt, ForEach):
        yield stmt.iterable, False
    elif isinstance(stmt, (Return, Throw)):
        if stmt.expr is not None:
            yield stmt.expr, False


def iter_calls(expr: Expr, conditional: bool = False) -> Iterator[tuple[MethodCall, bool]]:
    """Every MethodCall under ``expr`` with its conditional-evaluation flag."""
    if isinstance(expr, MethodCall):
        yield expr, conditional
    if isinstance(expr, Binary) and expr.op in ("&&", "||"):
        yield from iter_calls(expr.left, conditional)
        yield from iter_calls(expr.right, True)
        return
    if isinstance(expr, Conditional):
        yield from iter_calls(expr.cond, conditional)
        yield from iter_calls(expr.then, True)
        yield from iter_calls(expr.orelse, True)
        return
    for child in expr.children():
        if isinstance(child, Expr):
            yield from iter_calls(child, conditional)


def call_role(stmt: Stmt, call: MethodCall) -> str:
    if isinstance(stmt, ExprStmt):
        if stmt.expr is call:
            return STANDALONE
        if isinstance(stmt.expr, Assign) and stmt.expr.op == "=" and stmt.expr.value is call:
            return ASSIGNMENT_RHS
    if isinstance(stmt, LocalVarDecl) and any(d.init is call for d in stmt.declarators):
        return ASSIGNMENT_RHS
    return SUBEXPRESSION


@dataclass(frozen=True)
class CallSite:
    unit: SourceUnit
    method: MethodDecl
    stmt_path: tuple
    expr: MethodCall
    role: str
    context: StmtContext
    conditional: bool = False

    @property
    def stmt(self) -> Stmt:
        return self.context.stmt

    @property
    def line(self) -> int:
        return self.unit.line(self.expr.span[0])

    @property
    def location(self) -> str:
        return f"{self.unit.path}:{self.line}"


def find_calls(unit: SourceUnit, mapping: "ApiMapping") -> list[CallSite]:
    """All calls matching ``mapping``'s deprecated method, in source order.

    Opaque methods are skipped.
    """
    sites = []
    for method in unit.methods():
        if method.body is None:
            continue
        for ctx in iter_statements(method.body):
            for expr, cond in direct_exprs(ctx.stmt):
                for call, call_cond in iter_calls(expr, cond):
                    if mapping.matches_deprecated(call):
                        role = call_role(ctx.stmt, call)
                        sites.append(CallSite(unit, method, ctx.path, call, role, ctx, call_cond))
    sites.sort(key=lambda s: (s.expr.span[0], -s.expr.span[1]))
    return sites
