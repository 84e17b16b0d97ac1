"""Build an update patch from a validated example block."""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import UpdatedBlock, validate_block
from .errors import SynthesisError
from .mapping import ApiMapping
from .normalize import NAMING
from .smpl.patch import SemanticPatch, parse_patch

_BOXED = {
    "Integer": "int",
    "Long": "long",
    "Short": "short",
    "Byte": "byte",
    "Character": "char",
    "Boolean": "boolean",
    "Float": "float",
    "Double": "double",
}


def _type_key(name: str) -> str:
    dims = name.count("[]")
    simple = name.split("<", 1)[0].replace("[]", "").rsplit(".", 1)[-1].strip()
    return _BOXED.get(simple, simple) + "[]" * dims


def compatible(param: str, replacement: str) -> bool:
    """Same simple type name, treating boxed and primitive forms as equal."""
    return _type_key(param) == _type_key(replacement)


def replacement_arg_indices(mapping: ApiMapping) -> tuple[int, ...]:
    """Positions of the deprecated call's arguments passed to the replacement.

    The replacement's parameters must line up with the tail of the
    deprecated parameter list (e.g. a dropped leading Context) or, failing
    that, its head (a dropped trailing flag). Anything else would need new
    argument objects built elsewhere, which is out of reach without data-flow
    analysis.
    """
    old, new = mapping.param_types, mapping.replacement_param_types
    n, r = len(old), len(new)
    if r > n:
        raise SynthesisError(
            f"{mapping.replacement_method} takes {r} argument(s) but {mapping.deprecated_method} "
            f"supplies {n}; the missing values cannot be drawn from the old call"
        )
    for offset in (n - r, 0):
        if all(compatible(old[offset + j], new[j]) for j in range(r)):
            return tuple(range(offset, offset + r))
    raise SynthesisError(
        f"arguments of {mapping.replacement_method}({', '.join(new)}) cannot be drawn positionally "
        f"from {mapping.deprecated_method}({', '.join(old)})"
    )


@dataclass(frozen=True)
class SynthesisPlan:
    receiver_metavar: str
    init_metavar: str
    arg_metavars: tuple[str, ...]
    return_temp_name: str
    guard_text: str
    replacement_args: tuple[int, ...]

    @classmethod
    def for_mapping(cls, mapping: ApiMapping) -> "SynthesisPlan":
        return cls(
            receiver_metavar="classIden",
            init_metavar="exp0",
            arg_metavars=tuple(f"arg{i}" for i in range(mapping.arity)),
            return_temp_name=NAMING.return_temp,
            guard_text=f"Build.VERSION.SDK_INT >= Build.VERSION_CODES.{mapping.since_version}",
            replacement_args=replacement_arg_indices(mapping),
        )


def _rule_text(name: str, mapping: ApiMapping, plan: SynthesisPlan, assign_to: str | None) -> str:
    recv = plan.receiver_metavar
    old_args = ", ".join(plan.arg_metavars)
    new_args = ", ".join(plan.arg_metavars[i] for i in plan.replacement_args)
    lhs = f"{assign_to} = " if assign_to else ""
    decls = [f"expression {plan.init_metavar};", f"identifier {recv};"]
    decls += [f"expression {a};" for a in plan.arg_metavars]
    lines = [
        f"@{name}@",
        *decls,
        "@@",
        f" {mapping.class_simple_name} {recv} = {plan.init_metavar};",
        "...",
        f"+ if ({plan.guard_text}) {{",
        f"+ {lhs}{recv}.{mapping.replacement_method}({new_args});",
        "+ } else {",
        f" {lhs}{recv}.{mapping.deprecated_method}({old_args});",
        "+ }",
    ]
    return "\n".join(lines) + "\n"


def synthesize_patch(block: UpdatedBlock, mapping: ApiMapping) -> SemanticPatch:
    """Two rules for value-returning APIs (bare call, assignment to the
    return temporary), one rule for void APIs. Output is deterministic."""
    problems = validate_block(block, mapping)
    if problems:
        raise SynthesisError(f"invalid update block: {'; '.join(problems)}")
    plan = SynthesisPlan.for_mapping(mapping)
    base = f"update_{mapping.deprecated_method}"
    rules = [_rule_text(base, mapping, plan, None)]
    if mapping.returns_value:
        rules.append(_rule_text(f"{base}_assignment", mapping, plan, plan.return_temp_name))
    return parse_patch("\n".join(rules))
