"""A small semantic-patch engine: diff-like rules with metavariables."""

from .apply import RuleReport, TransformResult, apply_patch, apply_rule
from .match import Binding, match_rule, unify
from .patch import CONTEXT, DOTS, MINUS, PLUS, Metavar, PatchLine, PatchRule, SemanticPatch, parse_patch

__all__ = [
    "CONTEXT",
    "DOTS",
    "MINUS",
    "PLUS",
    "Binding",
    "Metavar",
    "PatchLine",
    "PatchRule",
    "RuleReport",
    "SemanticPatch",
    "TransformResult",
    "apply_patch",
    "apply_rule",
    "match_rule",
    "parse_patch",
    "unify",
]
