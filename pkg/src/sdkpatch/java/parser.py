"""Recursive-descent parser for the Java subset.

Class and method headers are recognized loosely: apart from names and
parameter lists, header text is skipped. Method bodies are parsed into full trees;
a body that uses anything outside the subset (lambdas, switch, anonymous
classes, ...) is kept as an opaque method instead of failing the file.
"""

from __future__ import annotations

from typing import Callable, Optional, TypeVar

from ..errors import ParseError
from .lexer import CHAR, EOF, FLOAT, IDENT, INT, KEYWORDS, OP, STRING, Token, line_of, tokenize
from .nodes import (
    ArrayAccess,
    Assign,
    Binary,
    Block,
    Break,
    Cast,
    CatchClause,
    Conditional,
    Continue,
    Declarator,
    DoWhile,
    Empty,
    Expr,
    ExprStmt,
    FieldAccess,
    FieldDecl,
    For,
    ForEach,
    Identifier,
    If,
    InstanceOf,
    Literal,
    LocalVarDecl,
    MethodCall,
    MethodDecl,
    New,
    Node,
    Paren,
    Return,
    SourceUnit,
    Stmt,
    Throw,
    Try,
    TypeDecl,
    TypeRef,
    Unary,
    While,
)

T = TypeVar("T")

PRIMITIVES = frozenset("boolean byte char short int long float double void".split())
MODIFIERS = frozenset(
    """public private protected static final abstract native synchronized
    transient volatile strictfp default sealed non-sealed""".split()
)
ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<=".split())

BINARY_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "|": 3,
    "^": 4,
    "&": 5,
    "==": 6,
    "!=": 6,
    "<": 7,
    ">": 7,
    "<=": 7,
    ">=": 7,
    "instanceof": 7,
    "<<": 8,
    ">>": 8,
    ">>>": 8,
    "+": 9,
    "-": 9,
    "*": 10,
    "/": 10,
    "%": 10,
}

# tokens that may follow ")" of a reference-type cast
_CAST_FOLLOW_KINDS = (IDENT, INT, FLOAT, STRING, CHAR)
_NOT_CAST_FOLLOW = frozenset({"instanceof"})


class _Backtrack(Exception):
    pass


class Parser:
    def __init__(self, text: str, path: str = "<input>"):
        self.text = text
        self.path = path
        self.tokens = tokenize(text, path)
        self.pos = 0

    # ------------------------------------------------------------ utilities

    def peek(self, k: int = 0) -> Token:
        i = min(self.pos + k, len(self.tokens) - 1)
        return self.tokens[i]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != EOF:
            self.pos += 1
        return tok

    @property
    def prev_end(self) -> int:
        return self.tokens[self.pos - 1].end if self.pos else 0

    def error(self, expected: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(tok.start, expected, self.path, line_of(self.text, tok.start))

    def expect_op(self, text: str) -> Token:
        tok = self.peek()
        if not tok.is_op(text):
            raise self.error(repr(text))
        return self.next()

    def expect_kw(self, text: str) -> Token:
        tok = self.peek()
        if not tok.is_kw(text):
            raise self.error(repr(text))
        return self.next()

    def expect_name(self) -> Token:
        tok = self.peek()
        if tok.kind != IDENT or (tok.text in KEYWORDS and tok.text != "var"):
            raise self.error("identifier")
        return self.next()

    def accept_op(self, text: str) -> bool:
        if self.peek().is_op(text):
            self.next()
            return True
        return False

    def attempt(self, fn: Callable[[], T]) -> Optional[T]:
        """Run ``fn`` speculatively; rewind and return None on failure."""
        saved = self.pos
        try:
            return fn()
        except (ParseError, _Backtrack):
            self.pos = saved
            return None

    def adjacent(self, k: int) -> bool:
        """True when token k+1 starts exactly where token k ends."""
        return self.peek(k).end == self.peek(k + 1).start

    def matching(self, index: int) -> int:
        """Index of the token closing the bracket at ``index``."""
        pairs = {"{": "}", "(": ")", "[": "]"}
        open_text = self.tokens[index].text
        close_text = pairs[open_text]
        depth = 0
        for i in range(index, len(self.tokens)):
            tok = self.tokens[i]
            if tok.is_op(open_text):
                depth += 1
            elif tok.is_op(close_text):
                depth -= 1
                if depth == 0:
                    return i
        raise self.error(repr(close_text), self.tokens[-1])

    def skip_balanced(self) -> None:
        self.pos = self.matching(self.pos) + 1

    # ----------------------------------------------------- top-level structure

    def parse_unit(self) -> SourceUnit:
        self.skip_annotations()
        if self.peek().is_kw("package"):
            self.skip_past(";")
        while self.peek().is_kw("import"):
            self.skip_past(";")
        decls = []
        while self.peek().kind != EOF:
            if self.accept_op(";"):
                continue
            decls.append(self.parse_type_decl())
        return SourceUnit(self.path, self.text, tuple(decls))

    def skip_past(self, op: str) -> None:
        while not self.peek().is_op(op):
            if self.peek().kind == EOF:
                raise self.error(repr(op))
            self.next()
        self.next()

    def skip_annotations(self) -> None:
        while self.peek().is_op("@") and not self.peek(1).is_kw("interface"):
            self.next()
            self.expect_name()
            while self.peek().is_op(".") and self.peek(1).kind == IDENT:
                self.next()
                self.next()
            if self.peek().is_op("("):
                self.skip_balanced()

    def skip_modifiers(self) -> None:
        while True:
            self.skip_annotations()
            tok = self.peek()
            if tok.kind == IDENT and tok.text in MODIFIERS:
                self.next()
            elif tok.is_kw("non") and self.peek(1).is_op("-"):
                self.pos += 3
            else:
                return

    def parse_type_decl(self) -> TypeDecl:
        start = self.peek().start
        self.skip_modifiers()
        tok = self.peek()
        if tok.is_op("@") and self.peek(1).is_kw("interface"):
            self.next()
            kind = "@interface"
        elif tok.is_kw("class", "interface", "enum", "record"):
            kind = tok.text
        else:
            raise self.error("class, interface or enum declaration")
        self.next()
        name = self.expect_name().text
        while not self.peek().is_op("{"):
            if self.peek().kind == EOF or self.peek().is_op("}", ";"):
                raise self.error("'{' opening the type body")
            if self.peek().is_op("("):
                self.skip_balanced()
            else:
                self.next()
        open_index = self.pos
        close_index = self.matching(open_index)
        self.next()
        if kind == "@interface" or kind == "record":
            self.pos = close_index + 1
            return TypeDecl((start, self.prev_end), kind, name, ())
        if kind == "enum":
            self.skip_enum_constants(close_index)
        members: list[Node] = []
        while self.pos < close_index:
            member = self.parse_member(name)
            if member is not None:
                members.append(member)
        self.expect_op("}")
        return TypeDecl((start, self.prev_end), kind, name, tuple(members))

    def skip_enum_constants(self, close_index: int) -> None:
        while self.pos < close_index:
            tok = self.peek()
            if tok.is_op(";"):
                self.next()
                return
            if tok.is_op("(", "{"):
                self.skip_balanced()
            else:
                self.next()

    def parse_member(self, class_name: str) -> Optional[Node]:
        start = self.peek().start
        if self.accept_op(";"):
            return None
        if self.peek().is_kw("static") and self.peek(1).is_op("{"):
            self.next()
        if self.peek().is_op("{"):
            self.skip_balanced()
            return None
        self.skip_modifiers()
        tok = self.peek()
        if tok.is_kw("class", "interface", "enum", "record") or (
            tok.is_op("@") and self.peek(1).is_kw("interface")
        ):
            self.pos = self._rewind_to(start)
            return self.parse_type_decl()
        if tok.is_op("<"):
            self.skip_type_args()
        return_type: Optional[str]
        if self.peek().kind == IDENT and self.peek(1).is_op("("):
            return_type = None
        else:
            return_type = self.parse_type().name
        name_tok = self.expect_name()
        if self.peek().is_op("("):
            return self.parse_method_rest(start, name_tok.text, return_type)
        # field: skip to the terminating ';' at bracket depth zero
        while not self.peek().is_op(";"):
            if self.peek().kind == EOF or self.peek().is_op("}"):
                raise self.error("';' ending field declaration")
            if self.peek().is_op("(", "{", "["):
                self.skip_balanced()
            else:
                self.next()
        self.next()
        return FieldDecl((start, self.prev_end), self.text[start : self.prev_end])

    def _rewind_to(self, offset: int) -> int:
        for i, tok in enumerate(self.tokens):
            if tok.start == offset:
                return i
        raise self.error("declaration")

    def skip_type_args(self) -> None:
        depth = 0
        while True:
            tok = self.next()
            if tok.is_op("<"):
                depth += 1
            elif tok.is_op(">"):
                depth -= 1
                if depth == 0:
                    return
            elif tok.kind == EOF:
                raise self.error("'>'")

    def parse_method_rest(self, start: int, name: str, return_type: Optional[str]) -> MethodDecl:
        open_index = self.pos
        close_index = self.matching(open_index)
        params = self.split_params(open_index + 1, close_index)
        self.pos = close_index + 1
        while self.peek().is_op("[") and self.peek(1).is_op("]"):
            self.pos += 2
        while not self.peek().is_op("{", ";"):
            if self.peek().kind == EOF or self.peek().is_op("}"):
                raise self.error("method body")
            self.next()
        if self.accept_op(";"):
            return MethodDecl((start, self.prev_end), name, params, return_type, None)
        body_open = self.pos
        body_close = self.matching(body_open)
        body_span = (self.tokens[body_open].start, self.tokens[body_close].end)
        try:
            body = self.parse_block()
            if self.pos != body_close + 1:
                raise self.error("end of method body")
        except ParseError:
            self.pos = body_close + 1
            return MethodDecl(
                (start, self.prev_end), name, params, return_type, None, True, body_span
            )
        return MethodDecl((start, self.prev_end), name, params, return_type, body, False, body_span)

    def split_params(self, lo: int, hi: int) -> tuple[tuple[str, str], ...]:
        params = []
        chunk: list[Token] = []
        depth = 0
        for tok in self.tokens[lo:hi]:
            if tok.is_op("<", "(", "["):
                depth += 1
            elif tok.is_op(">", ")", "]"):
                depth -= 1
            if tok.is_op(",") and depth == 0:
                params.append(self._param(chunk))
                chunk = []
            else:
                chunk.append(tok)
        if chunk:
            params.append(self._param(chunk))
        return tuple(params)

    def _param(self, toks: list[Token]) -> tuple[str, str]:
        words = []
        i = 0
        while i < len(toks):
            tok = toks[i]
            if tok.is_op("@"):
                i += 2
                if i < len(toks) and toks[i].is_op("("):
                    depth = 0
                    while i < len(toks):
                        depth += toks[i].is_op("(") - toks[i].is_op(")")
                        i += 1
                        if depth == 0:
                            break
                continue
            if not tok.is_kw("final"):
                words.append(tok)
            i += 1
        if not words:
            raise self.error("parameter", toks[0] if toks else None)
        name = words[-1].text
        type_text = _join_tokens(words[:-1])
        return (type_text, name)

    # ------------------------------------------------------------------ types

    def parse_type(self) -> TypeRef:
        start_index = self.pos
        tok = self.peek()
        if tok.kind == IDENT and tok.text in PRIMITIVES:
            self.next()
        elif tok.kind == IDENT and (tok.text not in KEYWORDS or tok.text == "var"):
            self.next()
            if self.peek().is_op("<"):
                self.parse_type_args()
            while self.peek().is_op(".") and self.peek(1).kind == IDENT and self.peek(1).text not in KEYWORDS:
                self.pos += 2
                if self.peek().is_op("<"):
                    self.parse_type_args()
        else:
            raise self.error("type")
        while self.peek().is_op("[") and self.peek(1).is_op("]"):
            self.pos += 2
        toks = self.tokens[start_index : self.pos]
        return TypeRef((toks[0].start, toks[-1].end), _join_tokens(toks))

    def parse_type_args(self) -> None:
        self.expect_op("<")
        if self.accept_op(">"):
            return  # diamond
        while True:
            if self.accept_op("?"):
                if self.peek().is_kw("extends", "super"):
                    self.next()
                    self.parse_type()
            else:
                self.parse_type()
            if not self.accept_op(","):
                break
        self.expect_op(">")

    # ------------------------------------------------------------- statements

    def parse_block(self) -> Block:
        start = self.expect_op("{").start
        stmts = []
        while not self.peek().is_op("}"):
            if self.peek().kind == EOF:
                raise self.error("'}'")
            stmts.append(self.parse_statement())
        self.next()
        return Block((start, self.prev_end), tuple(stmts))

    def parse_statement(self) -> Stmt:
        tok = self.peek()
        start = tok.start
        if tok.is_op("{"):
            return self.parse_block()
        if tok.is_op(";"):
            self.next()
            return Empty((start, self.prev_end))
        if tok.kind == IDENT:
            handler = _STATEMENT_KEYWORDS.get(tok.text)
            if handler is not None:
                return handler(self)
            if tok.text in ("switch", "synchronized", "assert", "class", "interface", "enum", "yield"):
                raise self.error("supported statement")
            if self.peek(1).is_op(":") and tok.text not in KEYWORDS:
                raise self.error("supported statement (labels are not)")
        decl = self.attempt(self.parse_local_var_decl)
        if decl is not None:
            return decl
        expr = self.parse_expr()
        self.expect_op(";")
        return ExprStmt((start, self.prev_end), expr)

    def parse_local_var_decl(self, terminated: bool = True) -> LocalVarDecl:
        start = self.peek().start
        modifiers = []
        while True:
            if self.peek().is_op("@"):
                self.skip_annotations()
            elif self.peek().is_kw("final"):
                modifiers.append(self.next().text)
            else:
                break
        type_ref = self.parse_type()
        if self.peek().kind != IDENT or not self.peek(1).is_op("=", ";", ",", "["):
            raise _Backtrack()
        declarators = [self.parse_declarator()]
        while self.accept_op(","):
            declarators.append(self.parse_declarator())
        if terminated:
            self.expect_op(";")
        return LocalVarDecl((start, self.prev_end), tuple(modifiers), type_ref, tuple(declarators))

    def parse_declarator(self) -> Declarator:
        name_tok = self.expect_name()
        while self.peek().is_op("[") and self.peek(1).is_op("]"):
            self.pos += 2
        init = None
        if self.accept_op("="):
            if self.peek().is_op("{"):
                raise self.error("expression (array initializers are not supported)")
            init = self.parse_expr()
        return Declarator((name_tok.start, self.prev_end), name_tok.text, init, (name_tok.start, name_tok.end))

    def parse_if(self) -> If:
        start = self.expect_kw("if").start
        self.expect_op("(")
        cond = self.parse_expr()
        self.expect_op(")")
        then = self.parse_statement()
        orelse = None
        if self.peek().is_kw("else"):
            self.next()
            orelse = self.parse_statement()
        return If((start, self.prev_end), cond, then, orelse)

    def parse_while(self) -> While:
        start = self.expect_kw("while").start
        self.expect_op("(")
        cond = self.parse_expr()
        self.expect_op(")")
        body = self.parse_statement()
        return While((start, self.prev_end), cond, body)

    def parse_do(self) -> DoWhile:
        start = self.expect_kw("do").start
        body = self.parse_statement()
        self.expect_kw("while")
        self.expect_op("(")
        cond = self.parse_expr()
        self.expect_op(")")
        self.expect_op(";")
        return DoWhile((start, self.prev_end), body, cond)

    def parse_for(self) -> Stmt:
        start = self.expect_kw("for").start
        self.expect_op("(")
        foreach = self.attempt(self._foreach_header)
        if foreach is not None:
            var, iterable = foreach
            body = self.parse_statement()
            return ForEach((start, self.prev_end), var, iterable, body)
        init: tuple[Node, ...] = ()
        if not self.peek().is_op(";"):
            decl = self.attempt(lambda: self.parse_local_var_decl(terminated=False))
            init = (decl,) if decl is not None else self.parse_expr_list()
        self.expect_op(";")
        cond = None if self.peek().is_op(";") else self.parse_expr()
        self.expect_op(";")
        update = () if self.peek().is_op(")") else self.parse_expr_list()
        self.expect_op(")")
        body = self.parse_statement()
        return For((start, self.prev_end), init, cond, update, body)

    def _foreach_header(self) -> tuple[LocalVarDecl, Expr]:
        start = self.peek().start
        modifiers = []
        while self.peek().is_kw("final"):
            modifiers.append(self.next().text)
        type_ref = self.parse_type()
        name_tok = self.expect_name()
        decl_end = self.prev_end
        self.expect_op(":")
        iterable = self.parse_expr()
        self.expect_op(")")
        declarator = Declarator((name_tok.start, name_tok.end), name_tok.text, None, (name_tok.start, name_tok.end))
        var = LocalVarDecl((start, decl_end), tuple(modifiers), type_ref, (declarator,))
        return var, iterable

    def parse_expr_list(self) -> tuple[Expr, ...]:
        exprs = [self.parse_expr()]
        while self.accept_op(","):
            exprs.append(self.parse_expr())
        return tuple(exprs)

    def parse_return(self) -> Return:
        start = self.expect_kw("return").start
        expr = None if self.peek().is_op(";") else self.parse_expr()
        self.expect_op(";")
        return Return((start, self.prev_end), expr)

    def parse_throw(self) -> Throw:
        start = self.expect_kw("throw").start
        expr = self.parse_expr()
        self.expect_op(";")
        return Throw((start, self.prev_end), expr)

    def parse_try(self) -> Try:
        start = self.expect_kw("try").start
        if self.peek().is_op("("):
            raise self.error("'{' (try-with-resources is not supported)")
        body = self.parse_block()
        catches = []
        while self.peek().is_kw("catch"):
            cstart = self.next().start
            self.expect_op("(")
            while self.peek().is_kw("final"):
                self.next()
            types = [self.parse_type()]
            while self.accept_op("|"):
                types.append(self.parse_type())
            name = self.expect_name().text
            self.expect_op(")")
            cbody = self.parse_block()
            catches.append(CatchClause((cstart, self.prev_end), tuple(types), name, cbody))
        final = None
        if self.peek().is_kw("finally"):
            self.next()
            final = self.parse_block()
        if not catches and final is None:
            raise self.error("'catch' or 'finally'")
        return Try((start, self.prev_end), body, tuple(catches), final)

    def parse_jump(self) -> Stmt:
        tok = self.next()
        label = None
        if self.peek().kind == IDENT and self.peek().text not in KEYWORDS:
            label = self.next().text
        self.expect_op(";")
        cls = Break if tok.text == "break" else Continue
        return cls((tok.start, self.prev_end), label)

    # ------------------------------------------------------------ expressions

    def parse_expr(self) -> Expr:
        start = self.peek().start
        lhs = self.parse_conditional()
        op, count = self.peek_assign_op()
        if op is None:
            return lhs
        self.pos += count
        rhs = self.parse_expr()
        return Assign((start, self.prev_end), op, lhs, rhs)

    def peek_assign_op(self) -> tuple[Optional[str], int]:
        tok = self.peek()
        if tok.kind != OP:
            return None, 0
        if tok.text in ASSIGN_OPS:
            return tok.text, 1
        if tok.text == ">" and self.adjacent(0):
            if self.peek(1).is_op(">="):
                return ">>=", 2
            if self.peek(1).is_op(">") and self.adjacent(1) and self.peek(2).is_op(">="):
                return ">>>=", 3
        return None, 0

    def parse_conditional(self) -> Expr:
        start = self.peek().start
        cond = self.parse_binary(1)
        if not self.accept_op("?"):
            return cond
        then = self.parse_expr()
        self.expect_op(":")
        orelse = self.parse_conditional()
        return Conditional((start, self.prev_end), cond, then, orelse)

    def peek_binary_op(self) -> tuple[Optional[str], int]:
        tok = self.peek()
        if tok.is_kw("instanceof"):
            return "instanceof", 1
        if tok.kind != OP:
            return None, 0
        if tok.text == ">" and self.adjacent(0) and self.peek(1).is_op(">", ">="):
            if self.peek(1).is_op(">="):
                return None, 0  # ">>=" assignment
            if self.adjacent(1) and self.peek(2).is_op(">"):
                return ">>>", 3
            if self.adjacent(1) and self.peek(2).is_op(">="):
                return None, 0  # ">>>=" assignment
            return ">>", 2
        if tok.text in BINARY_PRECEDENCE:
            return tok.text, 1
        return None, 0

    def parse_binary(self, min_prec: int) -> Expr:
        start = self.peek().start
        left = self.parse_unary()
        while True:
            op, count = self.peek_binary_op()
            if op is None or BINARY_PRECEDENCE[op] < min_prec:
                return left
            self.pos += count
            if op == "instanceof":
                type_ref = self.parse_type()
                left = InstanceOf((start, self.prev_end), left, type_ref)
                continue
            right = self.parse_binary(BINARY_PRECEDENCE[op] + 1)
            left = Binary((start, self.prev_end), op, left, right)

    def parse_unary(self) -> Expr:
        tok = self.peek()
        if tok.is_op("+", "-", "!", "~", "++", "--"):
            self.next()
            operand = self.parse_unary()
            return Unary((tok.start, self.prev_end), tok.text, operand)
        if tok.is_op("("):
            cast = self.attempt(self._cast)
            if cast is not None:
                return cast
        return self.parse_postfix()

    def _cast(self) -> Cast:
        start = self.expect_op("(").start
        type_ref = self.parse_type()
        self.expect_op(")")
        follow = self.peek()
        base = type_ref.name.rstrip("[]")
        if base not in PRIMITIVES:
            if follow.is_op("(", "!", "~"):
                pass
            elif follow.kind in _CAST_FOLLOW_KINDS and follow.text not in _NOT_CAST_FOLLOW:
                pass
            else:
                raise _Backtrack()
        expr = self.parse_unary()
        return Cast((start, self.prev_end), type_ref, expr)

    def parse_postfix(self) -> Expr:
        start = self.peek().start
        expr = self.parse_primary()
        while True:
            tok = self.peek()
            if tok.is_op("."):
                self.next()
                name_tok = self.peek()
                if name_tok.kind != IDENT or name_tok.text in ("new", "super") or (
                    name_tok.text in KEYWORDS and name_tok.text not in ("class", "this")
                ):
                    raise self.error("member name")
                self.next()
                if self.peek().is_op("(") and name_tok.text not in ("class", "this"):
                    args = self.parse_args()
                    expr = MethodCall(
                        (start, self.prev_end), expr, name_tok.text, args, (name_tok.start, name_tok.end)
                    )
                else:
                    expr = FieldAccess((start, self.prev_end), expr, name_tok.text)
            elif tok.is_op("["):
                self.next()
                index = self.parse_expr()
                self.expect_op("]")
                expr = ArrayAccess((start, self.prev_end), expr, index)
            elif tok.is_op("++", "--"):
                self.next()
                expr = Unary((start, self.prev_end), tok.text, expr, True)
            else:
                return expr

    def parse_args(self) -> tuple[Expr, ...]:
        self.expect_op("(")
        if self.accept_op(")"):
            return ()
        args = self.parse_expr_list()
        self.expect_op(")")
        return args

    def parse_primary(self) -> Expr:
        tok = self.peek()
        start = tok.start
        if tok.kind in (INT, FLOAT, STRING, CHAR):
            self.next()
            return Literal((start, tok.end), tok.kind, tok.text)
        if tok.is_kw("true", "false"):
            self.next()
            return Literal((start, tok.end), "bool", tok.text)
        if tok.is_kw("null"):
            self.next()
            return Literal((start, tok.end), "null", tok.text)
        if tok.is_op("("):
            self.next()
            inner = self.parse_expr()
            self.expect_op(")")
            return Paren((start, self.prev_end), inner)
        if tok.is_kw("new"):
            self.next()
            type_ref = self.parse_type()
            if not self.peek().is_op("("):
                raise self.error("'(' (array creation is not supported)")
            args = self.parse_args()
            if self.peek().is_op("{"):
                raise self.error("end of expression (anonymous classes are not supported)")
            return New((start, self.prev_end), type_ref, args)
        if tok.kind == IDENT and (tok.text not in KEYWORDS or tok.text in ("this", "super", "var")):
            self.next()
            if self.peek().is_op("("):
                args = self.parse_args()
                return MethodCall((start, self.prev_end), None, tok.text, args, (tok.start, tok.end))
            if self.peek().is_op("->"):
                raise self.error("expression (lambdas are not supported)")
            return Identifier((start, tok.end), tok.text)
        raise self.error("expression")


_STATEMENT_KEYWORDS: dict[str, Callable[[Parser], Stmt]] = {
    "if": Parser.parse_if,
    "while": Parser.parse_while,
    "do": Parser.parse_do,
    "for": Parser.parse_for,
    "return": Parser.parse_return,
    "throw": Parser.parse_throw,
    "try": Parser.parse_try,
    "break": Parser.parse_jump,
    "continue": Parser.parse_jump,
}


def _join_tokens(toks: list[Token]) -> str:
    out = []
    prev: Optional[Token] = None
    for tok in toks:
        if prev is not None and prev.kind == IDENT and tok.kind == IDENT:
            out.append(" ")
        out.append(tok.text)
        prev = tok
    return "".join(out)


def parse_unit(text: str, path: str = "<input>") -> SourceUnit:
    """Parse a whole compilation unit.

    Raises ParseError only when class/method structure cannot be recognized;
    unsupported method bodies become opaque methods.
    """
    return Parser(text, path).parse_unit()


def parse_statements(text: str, path: str = "<fragment>") -> tuple[Stmt, ...]:
    """Parse a sequence of statements; spans are relative to ``text``."""
    parser = Parser(text, path)
    stmts = []
    while parser.peek().kind != EOF:
        stmts.append(parser.parse_statement())
    return tuple(stmts)


def parse_expression(text: str, path: str = "<fragment>") -> Expr:
    parser = Parser(text, path)
    expr = parser.parse_expr()
    if parser.peek().kind != EOF:
        raise parser.error("end of expression")
    return expr
