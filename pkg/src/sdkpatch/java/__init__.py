"""Parser and source splicing for the supported Java subset."""

from .calls import ASSIGNMENT_RHS, STANDALONE, SUBEXPRESSION, CallSite, find_calls, iter_statements
from .edit import splice
from .nodes import SourceUnit, dotted_name, strip_parens
from .parser import parse_expression, parse_statements, parse_unit

__all__ = [
    "ASSIGNMENT_RHS",
    "STANDALONE",
    "SUBEXPRESSION",
    "CallSite",
    "SourceUnit",
    "dotted_name",
    "find_calls",
    "iter_statements",
    "parse_expression",
    "parse_statements",
    "parse_unit",
    "splice",
    "strip_parens",
]
