"""Per-API configuration: which deprecated method to update, and how."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import MappingError
from .java.nodes import MethodCall

_IDENT_RE = re.compile(r"^[A-Za-z_$][\w$]*$")
_QUALIFIED_RE = re.compile(r"^[A-Za-z_$][\w$]*(\.[A-Za-z_$][\w$]*)*$")

_STRING_FIELDS = ("deprecatedClass", "deprecatedMethod", "returnType", "replacementMethod", "sinceVersion")
_LIST_FIELDS = ("paramTypes", "replacementParamTypes")
FIELDS = _STRING_FIELDS + _LIST_FIELDS

GUARD_OP = ">="


@dataclass(frozen=True)
class ApiMapping:
    deprecated_class: str
    deprecated_method: str
    param_types: tuple[str, ...]
    return_type: str
    replacement_method: str
    replacement_param_types: tuple[str, ...]
    since_version: str
    guard_op: str = GUARD_OP

    @property
    def class_simple_name(self) -> str:
        return self.deprecated_class.rsplit(".", 1)[-1]

    @property
    def returns_value(self) -> bool:
        return self.return_type != "void"

    @property
    def arity(self) -> int:
        return len(self.param_types)

    @property
    def replacement_arity(self) -> int:
        return len(self.replacement_param_types)

    def matches_deprecated(self, call: MethodCall) -> bool:
        return call.name == self.deprecated_method and len(call.args) == self.arity

    def matches_replacement(self, call: MethodCall) -> bool:
        return call.name == self.replacement_method and len(call.args) == self.replacement_arity

    @classmethod
    def from_dict(cls, data: Any) -> "ApiMapping":
        if not isinstance(data, dict):
            raise MappingError("<root>", "expected a JSON object")
        unknown = sorted(set(data) - set(FIELDS))
        if unknown:
            raise MappingError(unknown[0], "unknown key")
        for name in FIELDS:
            if name not in data:
                raise MappingError(name, "required")
        for name in _STRING_FIELDS:
            value = data[name]
            if not isinstance(value, str):
                raise MappingError(name, "must be a string")
            if not value.strip():
                raise MappingError(name, "required")
        for name in _LIST_FIELDS:
            value = data[name]
            if not isinstance(value, list) or not all(isinstance(t, str) and t.strip() for t in value):
                raise MappingError(name, "must be a list of type names")
        if not _QUALIFIED_RE.match(data["deprecatedClass"]):
            raise MappingError("deprecatedClass", "not a qualified class name")
        for name in ("deprecatedMethod", "replacementMethod", "sinceVersion"):
            if not _IDENT_RE.match(data[name]):
                raise MappingError(name, "not an identifier")
        return cls(
            deprecated_class=data["deprecatedClass"],
            deprecated_method=data["deprecatedMethod"],
            param_types=tuple(t.strip() for t in data["paramTypes"]),
            return_type=data["returnType"].strip(),
            replacement_method=data["replacementMethod"],
            replacement_param_types=tuple(t.strip() for t in data["replacementParamTypes"]),
            since_version=data["sinceVersion"],
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "deprecatedClass": self.deprecated_class,
            "deprecatedMethod": self.deprecated_method,
            "paramTypes": list(self.param_types),
            "returnType": self.return_type,
            "replacementMethod": self.replacement_method,
            "replacementParamTypes": list(self.replacement_param_types),
            "sinceVersion": self.since_version,
        }


def load_mapping(path: str | Path) -> ApiMapping:
    try:
        raw = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MappingError("<file>", str(exc)) from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MappingError("<root>", f"malformed JSON: {exc}") from None
    return ApiMapping.from_dict(data)


def matches_deprecated(mapping: ApiMapping, call: MethodCall) -> bool:
    """Name and arity match; receivers are not type-checked."""
    return mapping.matches_deprecated(call)
