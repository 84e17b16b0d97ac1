"""Rewrite API call sites into the canonical form the update patches expect.

Canonical form for a call of the deprecated method::

    <Class> classNameVar = <receiver>;
    tempFunctionReturnValue = classNameVar.method(paramVar0, ...);

with each argument hoisted into its own ``paramVar<i>`` declaration. For
void methods the call is a standalone expression statement instead.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NormalizeError
from .java.calls import ASSIGNMENT_RHS, STANDALONE, CallSite, find_calls, iter_statements
from .java.edit import splice
from .java.lexer import IDENT, tokenize
from .java.nodes import Assign, ExprStmt, Identifier, LocalVarDecl, MethodDecl, SourceUnit, Span
from .java.parser import parse_unit
from .mapping import ApiMapping


@dataclass(frozen=True)
class NamingScheme:
    return_temp: str = "tempFunctionReturnValue"
    param_temp: str = "paramVar{i}"
    receiver_temp: str = "classNameVar"

    def is_return_temp(self, name: str) -> bool:
        return _suffixed(self.return_temp).match(name) is not None

    def is_receiver_temp(self, name: str) -> bool:
        return _suffixed(self.receiver_temp).match(name) is not None

    def is_param_temp(self, name: str) -> bool:
        base = re.escape(self.param_temp).replace(r"\{i\}", r"\d+")
        return re.fullmatch(base + r"(?:_\d+)?", name) is not None


NAMING = NamingScheme()


def _suffixed(base: str) -> re.Pattern:
    return re.compile(re.escape(base) + r"(?:_\d+)?$")


def fresh_name(base: str, used: set[str]) -> str:
    """``base`` if unused, else ``base_k`` for the smallest free k >= 1."""
    if base not in used:
        return base
    k = 1
    while f"{base}_{k}" in used:
        k += 1
    return f"{base}_{k}"


def method_identifiers(unit: SourceUnit, method: MethodDecl) -> set[str]:
    return {tok.text for tok in tokenize(unit.source(method)) if tok.kind == IDENT}


def in_normal_form(site: CallSite, naming: NamingScheme = NAMING) -> bool:
    """Receiver and every argument are identifiers from the reserved scheme."""
    call = site.expr
    if not isinstance(call.receiver, Identifier) or not naming.is_receiver_temp(call.receiver.name):
        return False
    return all(isinstance(a, Identifier) and naming.is_param_temp(a.name) for a in call.args)


def needs_statement_extraction(site: CallSite, mapping: ApiMapping, naming: NamingScheme = NAMING) -> bool:
    """Value-returning calls must be a bare statement or ``<returnTemp> = call;``."""
    if not mapping.returns_value or site.role == STANDALONE:
        return False
    if site.role == ASSIGNMENT_RHS and isinstance(site.stmt, ExprStmt):
        target = site.stmt.expr.target
        return not (isinstance(target, Identifier) and naming.is_return_temp(target.name))
    return True


# ----------------------------------------------------------------- insertion


def _line_indent(text: str, offset: int) -> tuple[str, bool]:
    """Indentation of the line holding ``offset`` and whether offset starts it."""
    line_start = text.rfind("\n", 0, offset) + 1
    prefix = text[line_start:offset]
    if prefix.strip() == "":
        return prefix, True
    stripped = len(prefix) - len(prefix.lstrip())
    return prefix[:stripped], False


def _insert_before(unit: SourceUnit, site: CallSite, new_stmts: list[str], stmt_text: str) -> str:
    """Put ``new_stmts`` in front of the enclosing statement, rewritten to ``stmt_text``."""
    stmt = site.stmt
    text = unit.text
    if site.context.in_block:
        indent, at_line_start = _line_indent(text, stmt.span[0])
        sep = "\n" + indent if at_line_start else " "
        replacement = "".join(s + sep for s in new_stmts) + stmt_text
        return splice(unit, [(stmt.span, replacement)])
    # branch body without braces: wrap it in a block
    owner = site.context.parent
    indent, _ = _line_indent(text, owner.span[0])
    inner = indent + "    "
    lines = new_stmts + [stmt_text]
    body = "\n" + "".join(inner + s + "\n" for s in lines) + indent + "}"
    header = tokenize(text[owner.span[0] : stmt.span[0]])
    last = header[-2] if len(header) > 1 else None  # header[-1] is EOF
    if last is not None and text[owner.span[0] + last.end : stmt.span[0]].isspace():
        # nothing but whitespace after `)` or `else`: keep the brace on that line
        return splice(unit, [((owner.span[0] + last.end, stmt.span[1]), " {" + body)])
    return splice(unit, [(stmt.span, "{" + body)])


def _rewrite_in_stmt(unit: SourceUnit, site: CallSite, replacement: str) -> str:
    """Text of the enclosing statement with the call replaced."""
    s0 = site.stmt.span[0]
    c0, c1 = site.expr.span
    stmt_text = unit.source(site.stmt)
    return stmt_text[: c0 - s0] + replacement + stmt_text[c1 - s0 :]


def _check_hoistable(site: CallSite) -> None:
    if site.conditional:
        raise NormalizeError(
            f"{site.location}: call to {site.expr.name} is evaluated conditionally or in a loop header; "
            "it cannot be hoisted before its statement"
        )
    if site.context.field not in ("stmts", "then", "orelse", "body"):
        raise NormalizeError(f"{site.location}: cannot insert statements before this position")


def _reparse(unit: SourceUnit, new_text: str, site: CallSite) -> SourceUnit:
    new_unit = parse_unit(new_text, unit.path)
    if len(new_unit.opaque_methods()) > len(unit.opaque_methods()):
        raise NormalizeError(f"{site.location}: rewritten method no longer parses")
    return new_unit


def _idents(text: str) -> set[str]:
    return {tok.text for tok in tokenize(text) if tok.kind == IDENT}


def _return_temp_name(site: CallSite, mapping: ApiMapping, naming: NamingScheme) -> tuple[str, bool]:
    """(name, needs_declaration) for the hoisted return value.

    The base name is preferred because update patches anchor on it. A
    visible earlier declaration of the same type is reused when the current
    statement does not read it. Otherwise the base name is declared afresh
    when that is legal Java: no declaration of it is in scope here and the
    new declaration's scope does not mention it. Anything else gets a
    suffixed name.
    """
    base = naming.return_temp
    unit, body = site.unit, site.method.body
    used = method_identifiers(unit, site.method)
    if base not in used:
        return base, True
    start = site.stmt.span[0]
    local = False
    for ctx in iter_statements(body):
        decl = ctx.stmt
        if not (isinstance(decl, LocalVarDecl) and any(d.name == base for d in decl.declarators)):
            continue
        local = True
        if not ctx.in_block:
            continue
        scope: Span = ctx.parent.span
        if decl.span[1] <= start and scope[0] <= start and site.stmt.span[1] <= scope[1]:
            if decl.type.name == mapping.return_type and base not in _idents(unit.source(site.stmt)):
                return base, False
            return fresh_name(base, used), True
    if local and base not in {name for _, name in site.method.params}:
        end = site.context.parent.span[1] if site.context.in_block else site.stmt.span[1]
        if base not in _idents(unit.text[start:end]):
            return base, True
    return fresh_name(base, used), True


# ---------------------------------------------------------------- operations


def extract_statement(
    unit: SourceUnit, site: CallSite, mapping: ApiMapping, naming: NamingScheme = NAMING
) -> SourceUnit:
    """Hoist a value-returning call out of a compound statement.

    Inserts ``T temp;`` and ``temp = call;`` before the enclosing statement
    and leaves ``temp`` in the call's place.
    """
    if not needs_statement_extraction(site, mapping, naming):
        return unit
    _check_hoistable(site)
    name, declare = _return_temp_name(site, mapping, naming)
    new_stmts = []
    if declare:
        new_stmts.append(f"{mapping.return_type} {name};")
    new_stmts.append(f"{name} = {unit.source(site.expr)};")
    stmt_text = _rewrite_in_stmt(unit, site, name)
    return _reparse(unit, _insert_before(unit, site, new_stmts, stmt_text), site)


def extract_variables(
    unit: SourceUnit, site: CallSite, mapping: ApiMapping, naming: NamingScheme = NAMING
) -> SourceUnit:
    """Hoist every argument, then the receiver, into reserved temporaries."""
    if in_normal_form(site, naming):
        return unit
    call = site.expr
    if call.receiver is None:
        raise NormalizeError(f"{site.location}: unqualified call to {call.name} is not supported")
    if isinstance(call.receiver, Identifier) and call.receiver.name == "super":
        raise NormalizeError(f"{site.location}: super.{call.name}(...) cannot be hoisted")
    _check_hoistable(site)
    used = method_identifiers(unit, site.method)
    new_stmts = []
    arg_names = []
    for i, (arg, type_name) in enumerate(zip(call.args, mapping.param_types)):
        name = fresh_name(naming.param_temp.format(i=i), used)
        used.add(name)
        arg_names.append(name)
        new_stmts.append(f"{type_name} {name} = {unit.source(arg)};")
    receiver_name = fresh_name(naming.receiver_temp, used)
    new_stmts.append(f"{mapping.class_simple_name} {receiver_name} = {unit.source(call.receiver)};")
    new_call = f"{receiver_name}.{call.name}({', '.join(arg_names)})"
    stmt_text = _rewrite_in_stmt(unit, site, new_call)
    return _reparse(unit, _insert_before(unit, site, new_stmts, stmt_text), site)


def pending_site(unit: SourceUnit, mapping: ApiMapping, naming: NamingScheme = NAMING) -> CallSite | None:
    for site in find_calls(unit, mapping):
        if needs_statement_extraction(site, mapping, naming) or not in_normal_form(site, naming):
            return site
    return None


def normalize_unit(unit: SourceUnit, mapping: ApiMapping, naming: NamingScheme = NAMING) -> SourceUnit:
    """Bring every call site of the deprecated method into canonical form.

    Sites are handled in source order; idempotent on its own output.
    """
    budget = 4 * (len(find_calls(unit, mapping)) + 1) * (mapping.arity + 2)
    while True:
        site = pending_site(unit, mapping, naming)
        if site is None:
            return unit
        budget -= 1
        if budget < 0:
            raise NormalizeError(f"{site.location}: normalization did not converge")
        if needs_statement_extraction(site, mapping, naming):
            unit = extract_statement(unit, site, mapping, naming)
        else:
            unit = extract_variables(unit, site, mapping, naming)
