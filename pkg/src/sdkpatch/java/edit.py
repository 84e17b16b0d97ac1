"""Text-preserving edits: replacements are spliced into the original text."""

from __future__ import annotations

from typing import Iterable

from ..errors import OverlapError
from .nodes import SourceUnit, Span

Edit = tuple[Span, str]


def splice(unit: SourceUnit | str, edits: Iterable[Edit]) -> str:
    """Apply ``(span, replacement)`` edits right-to-left.

    Zero-width spans are insertions. Two insertions at the same offset are
    applied in the order given.
    """
    text = unit if isinstance(unit, str) else unit.text
    ordered = sorted(enumerate(edits), key=lambda item: (item[1][0][0], item[1][0][1], item[0]))
    prev_end = -1
    prev_span = None
    for _, ((start, end), _repl) in ordered:
        if not 0 <= start <= end <= len(text):
            raise OverlapError(f"edit span {(start, end)} outside text of length {len(text)}")
        if start < prev_end:
            raise OverlapError(f"edit span {(start, end)} overlaps {prev_span}")
        prev_end = max(prev_end, end)
        prev_span = (start, end)
    pieces = []
    cursor = 0
    for _, ((start, end), repl) in ordered:
        pieces.append(text[cursor:start])
        pieces.append(repl)
        cursor = end
    pieces.append(text[cursor:])
    return "".join(pieces)
