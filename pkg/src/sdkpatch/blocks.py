"""Find the version-guarded if/else that shows how an API was updated."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import NoValidBlock
from .java.calls import iter_statements
from .java.edit import splice
from .java.nodes import (
    Assign,
    Binary,
    Block,
    Expr,
    ExprStmt,
    Identifier,
    If,
    Literal,
    LocalVarDecl,
    MethodCall,
    Node,
    SourceUnit,
    Stmt,
    Unary,
    dotted_name,
    strip_parens,
)
from .java.parser import parse_unit
from .mapping import ApiMapping

SDK_INT_NAMES = frozenset({"Build.VERSION.SDK_INT", "android.os.Build.VERSION.SDK_INT", "VERSION.SDK_INT"})
VERSION_CODES_PREFIXES = ("Build.VERSION_CODES.", "android.os.Build.VERSION_CODES.", "VERSION_CODES.")
CANONICAL_SDK_INT = "Build.VERSION.SDK_INT"

# public Build.VERSION_CODES values
VERSION_CODE_LEVELS = {
    "CUPCAKE": 3,
    "DONUT": 4,
    "ECLAIR": 5,
    "FROYO": 8,
    "GINGERBREAD": 9,
    "HONEYCOMB": 11,
    "ICE_CREAM_SANDWICH": 14,
    "JELLY_BEAN": 16,
    "JELLY_BEAN_MR1": 17,
    "JELLY_BEAN_MR2": 18,
    "KITKAT": 19,
    "LOLLIPOP": 21,
    "LOLLIPOP_MR1": 22,
    "M": 23,
    "N": 24,
    "N_MR1": 25,
    "O": 26,
    "O_MR1": 27,
    "P": 28,
    "Q": 29,
    "R": 30,
    "S": 31,
    "TIRAMISU": 33,
}

GUARD_OPS = (">=", ">", "<=", "<")
_FLIPPED = {">=": "<=", ">": "<", "<=": ">=", "<": ">"}
_COMPARISONS = frozenset({">=", ">", "<=", "<", "==", "!="})

NEW_IN_THEN = "new-in-then"
NEW_IN_ELSE = "new-in-else"
SHAPE_EXPR_STMT = "expr-stmt"
SHAPE_ASSIGNMENT = "assignment"


def is_sdk_int(expr: Expr) -> bool:
    return dotted_name(strip_parens(expr)) in SDK_INT_NAMES


def version_code_name(expr: Expr) -> Optional[str]:
    """``"M"`` for ``Build.VERSION_CODES.M`` (any accepted prefix), else None."""
    name = dotted_name(strip_parens(expr))
    if name is None:
        return None
    for prefix in VERSION_CODES_PREFIXES:
        if name.startswith(prefix) and "." not in name[len(prefix) :]:
            return name[len(prefix) :]
    return None


def is_version_value(expr: Expr) -> bool:
    return is_sdk_int(expr) or version_code_name(expr) is not None


@dataclass(frozen=True)
class VersionGuard:
    """``SDK_INT <op> <version>`` with the SDK operand canonically on the left."""

    op: str
    version: str  # "M" for a VERSION_CODES constant, or the integer literal text
    is_literal: bool = False

    @property
    def sdk_operand(self) -> str:
        return CANONICAL_SDK_INT

    @property
    def new_branch_is_then(self) -> bool:
        return self.op in (">=", ">")

    def mentions(self, version_name: str) -> bool:
        return not self.is_literal and self.version == version_name


def as_version_guard(cond: Expr) -> Optional[VersionGuard]:
    cond = strip_parens(cond)
    if not isinstance(cond, Binary) or cond.op not in GUARD_OPS:
        return None
    left, right, op = strip_parens(cond.left), strip_parens(cond.right), cond.op
    if is_sdk_int(right) and not is_sdk_int(left):
        left, right, op = right, left, _FLIPPED[op]
    if not is_sdk_int(left) or is_sdk_int(right):
        return None
    code = version_code_name(right)
    if code is not None:
        return VersionGuard(op, code)
    if isinstance(right, Literal) and right.kind == "int":
        return VersionGuard(op, right.value, is_literal=True)
    return None


# ------------------------------------------------------- condition rewriting


def _assigned_names(node: Node) -> set[str]:
    names = set()
    for n in node.walk():
        if isinstance(n, Assign) and isinstance(n.target, Identifier):
            names.add(n.target.name)
        elif isinstance(n, Unary) and n.op in ("++", "--") and isinstance(n.operand, Identifier):
            names.add(n.operand.name)
    return names


def _condition_edits(cond: Expr, tracked: dict[str, str]) -> Iterator[tuple[tuple[int, int], str]]:
    for n in cond.walk():
        if isinstance(n, Binary) and n.op in _COMPARISONS:
            for side in (n.left, n.right):
                inner = strip_parens(side)
                if isinstance(inner, Identifier) and inner.name in tracked:
                    yield inner.span, tracked[inner.name]


def _if_chain_conds(stmt: If) -> Iterator[Expr]:
    while True:
        yield stmt.cond
        if isinstance(stmt.orelse, If):
            stmt = stmt.orelse
        else:
            return


def _blocks(body: Block) -> Iterator[Block]:
    yield body
    for ctx in iter_statements(body):
        if isinstance(ctx.stmt, Block):
            yield ctx.stmt


def _block_edits(unit: SourceUnit, block: Block) -> list[tuple[tuple[int, int], str]]:
    tracked: dict[str, str] = {}
    edits = []
    for stmt in block.stmts:
        if isinstance(stmt, LocalVarDecl):
            for d in stmt.declarators:
                tracked.pop(d.name, None)
                if d.init is not None and is_version_value(d.init):
                    tracked[d.name] = unit.source(strip_parens(d.init))
            for name in _assigned_names(stmt):
                tracked.pop(name, None)
            continue
        if isinstance(stmt, ExprStmt) and isinstance(stmt.expr, Assign) and isinstance(stmt.expr.target, Identifier):
            name = stmt.expr.target.name
            for other in _assigned_names(stmt.expr.value):
                tracked.pop(other, None)
            tracked.pop(name, None)
            if stmt.expr.op == "=" and is_version_value(stmt.expr.value):
                tracked[name] = unit.source(strip_parens(stmt.expr.value))
            continue
        if isinstance(stmt, If) and tracked:
            for cond in _if_chain_conds(stmt):
                edits.extend(_condition_edits(cond, tracked))
        for name in _assigned_names(stmt):
            tracked.pop(name, None)
    return edits


def normalize_version_conditions(unit: SourceUnit) -> SourceUnit:
    """Replace local variables holding SDK_INT / VERSION_CODES values in if
    conditions by the constants themselves. Declarations are kept."""
    edits = []
    for method in unit.methods():
        if method.body is None:
            continue
        for block in _blocks(method.body):
            edits.extend(_block_edits(unit, block))
    if not edits:
        return unit
    return parse_unit(splice(unit, edits), unit.path)


# ----------------------------------------------------------------- extraction


@dataclass(frozen=True)
class UpdatedBlock:
    guard: VersionGuard
    new_branch: tuple[Stmt, ...]
    old_branch: tuple[Stmt, ...]
    polarity: str
    old_call_shape: str
    assign_target: Optional[str]
    if_stmt: If
    unit: SourceUnit


def branch_statements(stmt: Optional[Stmt]) -> tuple[Stmt, ...]:
    if stmt is None:
        return ()
    if isinstance(stmt, Block):
        return stmt.stmts
    return (stmt,)


def _calls(stmts: Iterable[Stmt]) -> Iterator[MethodCall]:
    for s in stmts:
        for n in s.walk():
            if isinstance(n, MethodCall):
                yield n


def _has_new(stmts, mapping: ApiMapping) -> bool:
    return any(mapping.matches_replacement(c) for c in _calls(stmts))


def _has_old(stmts, mapping: ApiMapping) -> bool:
    return any(mapping.matches_deprecated(c) for c in _calls(stmts))


def _old_call_shape(stmts: tuple[Stmt, ...], mapping: ApiMapping) -> tuple[str, Optional[str]]:
    for s in stmts:
        for n in s.walk():
            if not isinstance(n, ExprStmt):
                continue
            expr = n.expr
            if isinstance(expr, MethodCall) and mapping.matches_deprecated(expr):
                return SHAPE_EXPR_STMT, None
            if (
                isinstance(expr, Assign)
                and expr.op == "="
                and isinstance(expr.target, Identifier)
                and isinstance(expr.value, MethodCall)
                and mapping.matches_deprecated(expr.value)
            ):
                return SHAPE_ASSIGNMENT, expr.target.name
    return "other", None


def classify_if(stmt: If, mapping: ApiMapping) -> Optional[str]:
    """Polarity if ``stmt`` satisfies both validity rules, else None."""
    if stmt.orelse is None or as_version_guard(stmt.cond) is None:
        return None
    then_stmts, else_stmts = branch_statements(stmt.then), branch_statements(stmt.orelse)
    then_new, then_old = _has_new(then_stmts, mapping), _has_old(then_stmts, mapping)
    else_new, else_old = _has_new(else_stmts, mapping), _has_old(else_stmts, mapping)
    if then_new and not then_old and else_old and not else_new:
        return NEW_IN_THEN
    if else_new and not else_old and then_old and not then_new:
        return NEW_IN_ELSE
    return None


def extract_update_block(unit: SourceUnit, mapping: ApiMapping) -> UpdatedBlock:
    """First if/else (source order) with a version-check condition, the
    replacement call on one side and the deprecated call on the other."""
    for method in unit.methods():
        if method.body is None:
            continue
        for ctx in iter_statements(method.body):
            stmt = ctx.stmt
            if not isinstance(stmt, If):
                continue
            polarity = classify_if(stmt, mapping)
            if polarity is None:
                continue
            then_stmts, else_stmts = branch_statements(stmt.then), branch_statements(stmt.orelse)
            if polarity == NEW_IN_THEN:
                new_branch, old_branch = then_stmts, else_stmts
            else:
                new_branch, old_branch = else_stmts, then_stmts
            shape, target = _old_call_shape(old_branch, mapping)
            return UpdatedBlock(
                guard=as_version_guard(stmt.cond),
                new_branch=new_branch,
                old_branch=old_branch,
                polarity=polarity,
                old_call_shape=shape,
                assign_target=target,
                if_stmt=stmt,
                unit=unit,
            )
    raise NoValidBlock(
        f"{unit.path}: no if/else guarded by an Android version check contains both "
        f"{mapping.replacement_method} and {mapping.deprecated_method}"
    )


def validate_block(block: UpdatedBlock, mapping: ApiMapping) -> list[str]:
    """Violations of the UpdatedBlock invariants; empty when valid."""
    problems = []
    if not _has_new(block.new_branch, mapping):
        problems.append("new branch lacks the replacement call")
    if not _has_old(block.old_branch, mapping):
        problems.append("old branch lacks the deprecated call")
    if _has_old(block.new_branch, mapping):
        problems.append("new branch contains the deprecated call")
    if _has_new(block.old_branch, mapping):
        problems.append("old branch contains the replacement call")
    guard = as_version_guard(block.if_stmt.cond)
    if guard is None or guard != block.guard:
        problems.append("condition is not a version check")
    if block.polarity not in (NEW_IN_THEN, NEW_IN_ELSE):
        problems.append(f"bad polarity {block.polarity!r}")
    return problems
