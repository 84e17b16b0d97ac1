"""The two end-to-end pipelines: learn a patch from one example, apply it."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .blocks import UpdatedBlock, extract_update_block, normalize_version_conditions
from .java.calls import find_calls
from .java.lexer import IDENT, OP, tokenize
from .java.nodes import SourceUnit
from .java.parser import parse_unit
from .mapping import ApiMapping
from .normalize import normalize_unit
from .smpl.apply import TransformResult, apply_patch
from .smpl.patch import SemanticPatch
from .synthesize import synthesize_patch

log = logging.getLogger(__name__)


@dataclass
class Learned:
    patch: SemanticPatch
    block: UpdatedBlock
    normalized_example: SourceUnit

    @property
    def text(self) -> str:
        return self.patch.render()


def learn_patch(mapping: ApiMapping, example_text: str, path: str = "<example>") -> Learned:
    unit = parse_unit(example_text, path)
    unit = normalize_unit(unit, mapping)
    unit = normalize_version_conditions(unit)
    block = extract_update_block(unit, mapping)
    return Learned(synthesize_patch(block, mapping), block, unit)


@dataclass
class FileUpdate:
    path: str
    original: str
    text: str
    call_sites: int = 0
    applied: int = 0
    skipped: int = 0
    warnings: list[str] = field(default_factory=list)
    result: TransformResult | None = None

    @property
    def changed(self) -> bool:
        return self.text != self.original


def hidden_usages(unit: SourceUnit, mapping: ApiMapping) -> list[str]:
    """Locations of deprecated-method calls inside opaque method bodies."""
    found = []
    for method in unit.opaque_methods():
        start, end = method.body_span
        toks = tokenize(unit.text[start:end])
        for tok, nxt in zip(toks, toks[1:]):
            if tok.kind == IDENT and tok.text == mapping.deprecated_method and nxt.kind == OP and nxt.text == "(":
                found.append(
                    f"{unit.path}:{unit.line(start + tok.start)}: {mapping.deprecated_method} call in "
                    f"method {method.name} uses unsupported syntax; not analysed"
                )
    return found


def update_source(mapping: ApiMapping, patch: SemanticPatch, text: str, path: str = "<target>") -> FileUpdate:
    """Normalize ``text`` and apply ``patch``.

    When nothing is applied the original text is returned untouched, so
    normalization never leaks into files that were not updated.
    """
    unit = parse_unit(text, path)
    update = FileUpdate(path, text, text, call_sites=len(find_calls(unit, mapping)))
    update.warnings = hidden_usages(unit, mapping)
    normalized = normalize_unit(unit, mapping)
    result = apply_patch(patch, normalized)
    update.result = result
    update.applied = result.applied
    update.skipped = result.skipped
    if result.applied:
        update.text = result.text
    return update
