"""Applying semantic patches to source units."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..blocks import as_version_guard, VERSION_CODE_LEVELS
from ..errors import ParseError, ReparseError
from ..java.calls import StmtContext
from ..java.edit import Edit, splice
from ..java.lexer import IDENT, tokenize
from ..java.nodes import If, SourceUnit
from ..java.parser import parse_unit
from .match import Binding, match_rule
from .patch import DOTS, MINUS, PLUS, PatchRule, SemanticPatch

INDENT = "    "
_VERSION_REF_RE = re.compile(r"VERSION_CODES\.(\w+)")


@dataclass
class RuleReport:
    name: str
    matches: int = 0
    applied: int = 0
    skipped: int = 0
    bindings: list[Binding] = field(default_factory=list)
    skipped_lines: list[int] = field(default_factory=list)


@dataclass
class TransformResult:
    text: str
    unit: SourceUnit
    rules: list[RuleReport]

    @property
    def matches(self) -> int:
        return sum(r.matches for r in self.rules)

    @property
    def applied(self) -> int:
        return sum(r.applied for r in self.rules)

    @property
    def skipped(self) -> int:
        return sum(r.skipped for r in self.rules)

    @property
    def changed(self) -> bool:
        return self.applied > 0


@dataclass
class _AnchorEdit:
    before: list[tuple[str, int]] = field(default_factory=list)  # (template, depth)
    after: list[tuple[str, int]] = field(default_factory=list)
    depth: int = 0
    remove: bool = False


def _layout(rule: PatchRule) -> list[_AnchorEdit]:
    """Attach every added line to an anchor, with its brace depth.

    Added lines directly after an anchor go after it; added lines that
    follow "..." or open the rule go before the next anchor.
    """
    edits: list[_AnchorEdit] = []
    pending: list[tuple[str, int]] = []
    depth = 0
    attach_after = False
    for line in rule.lines:
        if line.mark == PLUS:
            text = line.text
            render_depth = max(depth - (1 if text.lstrip().startswith("}") else 0), 0)
            depth += text.count("{") - text.count("}")
            if attach_after and edits:
                edits[-1].after.append((text, render_depth))
            else:
                pending.append((text, render_depth))
        elif line.mark == DOTS:
            attach_after = False
        else:
            edits.append(_AnchorEdit(before=pending, depth=max(depth, 0), remove=line.mark == MINUS))
            pending = []
            attach_after = True
    if pending and edits:
        edits[-1].after.extend(pending)
    return edits


def instantiate(template: str, texts: dict[str, str]) -> str:
    """Replace metavariable identifiers in ``template`` by bound source text."""
    out = []
    cursor = 0
    for tok in tokenize(template):
        if tok.kind == IDENT and tok.text in texts:
            out.append(template[cursor : tok.start])
            out.append(texts[tok.text])
            cursor = tok.end
    out.append(template[cursor:])
    return "".join(out)


def _indent_of(text: str, offset: int) -> tuple[str, int, bool]:
    line_start = text.rfind("\n", 0, offset) + 1
    prefix = text[line_start:offset]
    if prefix.strip() == "":
        return prefix, line_start, True
    return prefix[: len(prefix) - len(prefix.lstrip())], line_start, False


def _anchor_edit(unit: SourceUnit, ctx: StmtContext, plan: _AnchorEdit, texts: dict[str, str]) -> Edit | None:
    if not plan.before and not plan.after and not plan.remove:
        return None
    text = unit.text
    start, end = ctx.stmt.span
    indent, line_start, at_line_start = _indent_of(text, start)
    lines = [INDENT * d + instantiate(t, texts) for t, d in plan.before]
    if not plan.remove:
        body = unit.source(ctx.stmt)
        shift = INDENT * plan.depth
        lines.append(shift + body.replace("\n", "\n" + shift) if shift else body)
    lines += [INDENT * d + instantiate(t, texts) for t, d in plan.after]
    if not lines:
        # pure deletion: drop the whole line when the statement owns it
        line_end = text.find("\n", end)
        line_end = len(text) if line_end < 0 else line_end
        if at_line_start and text[end:line_end].strip() == "":
            return ((line_start, min(line_end + 1, len(text))), "")
        return ((start, end), "")
    sep = "\n" + indent if at_line_start else " "
    return ((start, end), sep.join(lines))


def _version_names(rule: PatchRule) -> set[str]:
    names = set()
    for line in rule.lines:
        if line.mark == PLUS:
            names.update(_VERSION_REF_RE.findall(line.text))
    return names


def already_guarded(ctx: StmtContext, version_names: set[str]) -> bool:
    """True when an enclosing if already checks one of ``version_names``."""
    for anc in ctx.ancestors:
        if not isinstance(anc, If):
            continue
        guard = as_version_guard(anc.cond)
        if guard is None:
            continue
        for name in version_names:
            if guard.mentions(name):
                return True
            if guard.is_literal and VERSION_CODE_LEVELS.get(name) == int(guard.version.rstrip("lL"), 0):
                return True
    return False


def apply_rule(rule: PatchRule, unit: SourceUnit) -> tuple[SourceUnit, RuleReport]:
    report = RuleReport(rule.name)
    bindings = match_rule(rule, unit)
    report.matches = len(bindings)
    plans = _layout(rule)
    versions = _version_names(rule)
    edits: list[Edit] = []
    for binding in bindings:
        touched = [ctx for ctx, plan in zip(binding.anchors, plans) if plan.before or plan.after or plan.remove]
        if versions and any(already_guarded(ctx, versions) for ctx in touched):
            report.skipped += 1
            report.skipped_lines.append(unit.line(binding.anchors[-1].stmt.span[0]))
            continue
        for ctx, plan in zip(binding.anchors, plans):
            edit = _anchor_edit(unit, ctx, plan, binding.texts)
            if edit is not None:
                edits.append(edit)
        report.applied += 1
        report.bindings.append(binding)
    if not edits:
        return unit, report
    new_text = splice(unit, edits)
    try:
        new_unit = parse_unit(new_text, unit.path)
    except ParseError as exc:
        raise ReparseError(f"{unit.path}: rule {rule.name or '<anonymous>'} produced unparseable code: {exc}") from None
    if len(new_unit.opaque_methods()) > len(unit.opaque_methods()):
        bad = {m.name for m in new_unit.opaque_methods()} - {m.name for m in unit.opaque_methods()}
        raise ReparseError(
            f"{unit.path}: rule {rule.name or '<anonymous>'} produced a method body outside the "
            f"supported subset ({', '.join(sorted(bad)) or 'unknown'})"
        )
    return new_unit, report


def apply_patch(patch: SemanticPatch, unit: SourceUnit) -> TransformResult:
    """Apply every rule in order; each rule sees the previous rule's output."""
    reports = []
    for rule in patch.rules:
        unit, report = apply_rule(rule, unit)
        reports.append(report)
    return TransformResult(unit.text, unit, reports)
