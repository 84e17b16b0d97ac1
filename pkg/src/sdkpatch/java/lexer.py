"""Tokenizer for the Java subset.

Comments and whitespace are dropped; every token keeps its byte offsets so
that the parser can hang spans on nodes and edits can be spliced into the
original text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError

IDENT = "ident"
INT = "int"
FLOAT = "float"
CHAR = "char"
STRING = "string"
OP = "op"
EOF = "eof"

KEYWORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null var""".split()
)

# ">>" and friends are deliberately absent: the parser glues adjacent ">"
# tokens back together so that nested generics close cleanly.
_OPERATORS = sorted(
    """<<= ... -> :: ++ -- && || == != <= >= += -= *= /= %= &= |= ^= <<
    ( ) { } [ ] ; , . @ = > < ! ~ ? : + - * / & | ^ %""".split(),
    key=len,
    reverse=True,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<line_comment>//[^\n]*)
  | (?P<block_comment>/\*.*?\*/)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<char>'(?:[^'\\\n]|\\.)+')
  | (?P<float>(?:\d[\d_]*\.\d[\d_]*|\.\d[\d_]*|\d[\d_]*\.(?![\w.]))(?:[eE][+-]?\d+)?[fFdD]?
              |\d[\d_]*[eE][+-]?\d+[fFdD]?|\d[\d_]*[fFdD])
  | (?P<int>0[xX][\da-fA-F_]+[lL]?|0[bB][01_]+[lL]?|\d[\d_]*[lL]?)
  | (?P<ident>[A-Za-z_$][\w$]*)
  | (?P<op>"""
    + "|".join(re.escape(op) for op in _OPERATORS)
    + r""")
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    start: int
    end: int

    def is_op(self, *texts: str) -> bool:
        return self.kind == OP and self.text in texts

    def is_kw(self, *texts: str) -> bool:
        return self.kind == IDENT and self.text in texts


def line_of(text: str, offset: int) -> int:
    return text.count("\n", 0, offset) + 1


def tokenize(text: str, path: str | None = None) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(pos, "a token", path, line_of(text, pos))
        kind = m.lastgroup
        if kind not in ("ws", "line_comment", "block_comment"):
            tokens.append(Token(kind, m.group(), pos, m.end()))
        pos = m.end()
    tokens.append(Token(EOF, "", n, n))
    return tokens
