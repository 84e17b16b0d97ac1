"""Matching patch rules against method bodies."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Iterator, Optional

from ..java.calls import StmtContext, iter_statements
from ..java.nodes import (
    Declarator,
    Expr,
    Identifier,
    MethodCall,
    MethodDecl,
    Node,
    SourceUnit,
    TypeRef,
)
from .patch import DOTS, PatchRule

_SKIP_FIELDS = frozenset({"span", "name_span"})


@dataclass(frozen=True)
class Binding:
    """One match of a rule: metavariable values plus the matched anchors."""

    values: dict[str, Node]
    texts: dict[str, str]
    anchors: tuple[StmtContext, ...]
    method: Optional[MethodDecl] = field(default=None, compare=False)

    @property
    def span(self) -> tuple[int, int]:
        return (self.anchors[0].stmt.span[0], self.anchors[-1].stmt.span[1])


def unify(pattern: object, target: object, kinds: dict[str, str], env: dict[str, Node]) -> bool:
    """Structurally match ``pattern`` against ``target``, extending ``env``.

    ``env`` is mutated; callers pass a copy when they need to backtrack.
    """
    if isinstance(pattern, Identifier) and pattern.name in kinds:
        kind = kinds[pattern.name]
        if kind == "expression" and isinstance(target, Expr):
            return _bind(pattern.name, target, env)
        if kind == "identifier" and isinstance(target, Identifier):
            return _bind(pattern.name, target, env)
        return False
    if isinstance(pattern, TypeRef) and kinds.get(pattern.name) == "type":
        return isinstance(target, TypeRef) and _bind(pattern.name, target, env)
    if type(pattern) is not type(target):
        if isinstance(pattern, tuple) or isinstance(target, tuple):
            return False
        return pattern == target
    if isinstance(pattern, tuple):
        return len(pattern) == len(target) and all(unify(p, t, kinds, env) for p, t in zip(pattern, target))
    if not isinstance(pattern, Node):
        return pattern == target
    if isinstance(pattern, Declarator) and kinds.get(pattern.name) == "identifier":
        if not _bind(pattern.name, Identifier(target.name_span, target.name), env):
            return False
        return unify(pattern.init, target.init, kinds, env)
    if isinstance(pattern, MethodCall) and kinds.get(pattern.name) == "identifier":
        if not _bind(pattern.name, Identifier(target.name_span, target.name), env):
            return False
        return unify(pattern.receiver, target.receiver, kinds, env) and unify(pattern.args, target.args, kinds, env)
    for f in fields(pattern):
        if f.name in _SKIP_FIELDS:
            continue
        if not unify(getattr(pattern, f.name), getattr(target, f.name), kinds, env):
            return False
    return True


def _bind(name: str, value: Node, env: dict[str, Node]) -> bool:
    if name in env:
        return env[name] == value
    env[name] = value
    return True


def _anchor_plan(rule: PatchRule) -> list[tuple[object, bool]]:
    """(pattern, dots_before) for every anchor line in order."""
    plan = []
    dots = False
    for line in rule.lines:
        if line.mark == DOTS:
            dots = True
        elif line.is_anchor:
            plan.append((line.pattern, dots))
            dots = False
    return plan


def _overlaps(a: StmtContext, b: StmtContext) -> bool:
    (s0, e0), (s1, e1) = a.stmt.span, b.stmt.span
    return s0 < e1 and s1 < e0


def _method_matches(rule: PatchRule, unit: SourceUnit, method: MethodDecl) -> Iterator[Binding]:
    kinds = rule.metavar_kinds
    plan = _anchor_plan(rule)
    contexts = list(iter_statements(method.body))
    position = {id(ctx.stmt): i for i, ctx in enumerate(contexts)}

    def extend(k: int, prev: StmtContext, env: dict, chosen: list) -> Optional[tuple[dict, list]]:
        if k == len(plan):
            return env, chosen
        pattern, dots = plan[k]
        if dots:
            candidates = (c for c in contexts if c.stmt.span[0] >= prev.stmt.span[1])
        else:
            if not prev.in_block or prev.index + 1 >= len(prev.parent.stmts):
                return None
            nxt = prev.parent.stmts[prev.index + 1]
            candidates = iter((contexts[position[id(nxt)]],))
        for ctx in candidates:
            trial = dict(env)
            if unify(pattern, ctx.stmt, kinds, trial):
                found = extend(k + 1, ctx, trial, chosen + [ctx])
                if found is not None:
                    return found
        return None

    first_pattern = plan[0][0]
    for ctx in contexts:
        env: dict[str, Node] = {}
        if not unify(first_pattern, ctx.stmt, kinds, env):
            continue
        found = extend(1, ctx, env, [ctx])
        if found is None:
            continue
        env, chosen = found
        texts = {name: unit.source(node) for name, node in env.items()}
        yield Binding(env, texts, tuple(chosen), method)


def match_rule(rule: PatchRule, unit: SourceUnit) -> list[Binding]:
    """All non-overlapping matches in source order (earliest start wins)."""
    results: list[Binding] = []
    for method in unit.methods():
        if method.body is None:
            continue
        for binding in _method_matches(rule, unit, method):
            if any(_overlaps(a, b) for prior in results for a in prior.anchors for b in binding.anchors):
                continue
            results.append(binding)
    return results
