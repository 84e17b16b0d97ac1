"""A small interpreter used by the tests as a semantic-equivalence oracle.

It runs straight-line method bodies against stubbed API methods and records
a trace of calls and variable writes. Two snippets are taken to behave the
same when their traces agree. The interpreter deliberately shares nothing
with the analyses it checks: version constants and temporary-name patterns
are defined here again.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence, Union

from .errors import OracleError
from .java.nodes import (
    Assign,
    Binary,
    Block,
    Break,
    Cast,
    Conditional,
    Continue,
    DoWhile,
    Empty,
    Expr,
    ExprStmt,
    FieldAccess,
    For,
    Identifier,
    If,
    Literal,
    LocalVarDecl,
    MethodCall,
    MethodDecl,
    New,
    Paren,
    Return,
    Stmt,
    Try,
    Unary,
    While,
    dotted_name,
)
from .java.parser import parse_statements

# Published Android API levels.
VERSION_CODES = {
    "LOLLIPOP": 21,
    "LOLLIPOP_MR1": 22,
    "M": 23,
    "N": 24,
    "N_MR1": 25,
    "O": 26,
    "O_MR1": 27,
    "P": 28,
    "Q": 29,
}

_SDK_INT = {"Build.VERSION.SDK_INT", "android.os.Build.VERSION.SDK_INT", "VERSION.SDK_INT"}
_CODES_PREFIX = re.compile(r"^(?:android\.os\.)?(?:Build\.)?VERSION_CODES\.(\w+)$")
_TEMP_NAME = re.compile(r"^(?:tempFunctionReturnValue|classNameVar|paramVar\d+)(?:_\d+)?$")

LOOP_LIMIT = 1000


@dataclass(frozen=True)
class Obj:
    """An opaque object handle, compared by label."""

    label: str

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Sym:
    """The value of a static field nobody defined, e.g. ``R.style.X``."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class CallEvent:
    receiver: Optional[str]
    method: str
    args: tuple
    returned: Any


@dataclass(frozen=True)
class VarWrite:
    name: str
    value: Any


Event = Union[CallEvent, VarWrite]


@dataclass
class Trace:
    events: list[Event] = field(default_factory=list)
    returned: Any = None

    def calls(self) -> list[CallEvent]:
        return [e for e in self.events if isinstance(e, CallEvent)]

    def without_temps(self) -> "Trace":
        """Drop writes to the normalizer's temporaries."""
        kept = [e for e in self.events if not (isinstance(e, VarWrite) and _TEMP_NAME.match(e.name))]
        return Trace(kept, self.returned)

    def substitute(self, old: str, new: str, arg_indices: Sequence[int]) -> "Trace":
        """Rename calls to ``old`` as ``new`` keeping the given arguments."""
        events: list[Event] = []
        for e in self.events:
            if isinstance(e, CallEvent) and e.method == old:
                e = CallEvent(e.receiver, new, tuple(e.args[i] for i in arg_indices), e.returned)
            events.append(e)
        return Trace(events, self.returned)


Stub = Union[Any, Callable[[Optional[str], tuple], Any]]


class _Return(Exception):
    def __init__(self, value: Any):
        self.value = value


class _Break(Exception):
    pass


class _Continue(Exception):
    pass


class _Interpreter:
    def __init__(self, stubs: Mapping[str, Stub], sdk_int: int, env: Optional[dict]):
        self.stubs = stubs
        self.sdk_int = sdk_int
        self.env: dict[str, Any] = dict(env or {})
        self.trace = Trace()
        self.fresh = 0

    # statements -----------------------------------------------------------

    def run(self, stmts: Iterable[Stmt]) -> None:
        for stmt in stmts:
            self.stmt(stmt)

    def stmt(self, s: Stmt) -> None:
        if isinstance(s, Block):
            self.run(s.stmts)
        elif isinstance(s, LocalVarDecl):
            for d in s.declarators:
                if d.init is None:
                    self.env[d.name] = None
                else:
                    self.write(d.name, self.expr(d.init))
        elif isinstance(s, ExprStmt):
            self.expr(s.expr)
        elif isinstance(s, If):
            if self.truth(self.expr(s.cond)):
                self.stmt(s.then)
            elif s.orelse is not None:
                self.stmt(s.orelse)
        elif isinstance(s, (While, DoWhile, For)):
            self.loop(s)
        elif isinstance(s, Return):
            raise _Return(None if s.expr is None else self.expr(s.expr))
        elif isinstance(s, Try):
            if s.catches:
                raise OracleError("try with catch clauses is not supported")
            try:
                self.stmt(s.body)
            finally:
                if s.final is not None:
                    self.stmt(s.final)
        elif isinstance(s, Break):
            raise _Break()
        elif isinstance(s, Continue):
            raise _Continue()
        elif isinstance(s, Empty):
            pass
        else:
            raise OracleError(f"unsupported statement {type(s).__name__}")

    def loop(self, s: Stmt) -> None:
        if isinstance(s, For):
            for part in s.init:
                if isinstance(part, Stmt):
                    self.stmt(part)
                else:
                    self.expr(part)
        first = True
        for _ in range(LOOP_LIMIT):
            if isinstance(s, DoWhile):
                if not first and not self.truth(self.expr(s.cond)):
                    return
            elif s.cond is not None and not self.truth(self.expr(s.cond)):
                return
            first = False
            try:
                self.stmt(s.body)
            except _Break:
                return
            except _Continue:
                pass
            if isinstance(s, For):
                for u in s.update:
                    self.expr(u)
        raise OracleError(f"loop ran more than {LOOP_LIMIT} iterations")

    # expressions ----------------------------------------------------------

    def write(self, name: str, value: Any) -> None:
        self.env[name] = value
        self.trace.events.append(VarWrite(name, value))

    def truth(self, value: Any) -> bool:
        if not isinstance(value, bool):
            raise OracleError(f"condition evaluated to non-boolean {value!r}")
        return value

    def static(self, expr: Expr) -> Optional[Any]:
        name = dotted_name(expr)
        if name is None:
            return None
        root = name.split(".", 1)[0]
        if root in self.env:
            return None
        if name in _SDK_INT:
            return self.sdk_int
        m = _CODES_PREFIX.match(name)
        if m:
            if m.group(1) not in VERSION_CODES:
                raise OracleError(f"unknown version code {m.group(1)}")
            return VERSION_CODES[m.group(1)]
        if isinstance(expr, FieldAccess) or root[:1].isupper():
            return Sym(name)
        return None

    def expr(self, e: Expr) -> Any:
        if isinstance(e, Paren):
            return self.expr(e.expr)
        if isinstance(e, Literal):
            return _literal(e)
        if isinstance(e, (Identifier, FieldAccess)):
            value = self.static(e)
            if value is not None:
                return value
            if isinstance(e, Identifier):
                if e.name not in self.env:
                    raise OracleError(f"unbound variable {e.name}")
                return self.env[e.name]
            target = self.expr(e.target)
            if isinstance(target, (Obj, Sym)):
                return Obj(f"{target}.{e.name}")
            raise OracleError(f"field access on {target!r}")
        if isinstance(e, MethodCall):
            return self.call(e)
        if isinstance(e, Assign):
            return self.assign(e)
        if isinstance(e, Binary):
            if e.op in ("&&", "||"):
                left = self.truth(self.expr(e.left))
                if (e.op == "&&") != left:
                    return left
                return self.truth(self.expr(e.right))
            return _binary(e.op, self.expr(e.left), self.expr(e.right))
        if isinstance(e, Unary):
            return self.unary(e)
        if isinstance(e, Conditional):
            return self.expr(e.then) if self.truth(self.expr(e.cond)) else self.expr(e.orelse)
        if isinstance(e, Cast):
            value = self.expr(e.expr)
            if e.type.name in ("int", "long", "short", "byte") and isinstance(value, float):
                return int(value)
            return value
        if isinstance(e, New):
            args = tuple(self.expr(a) for a in e.args)
            self.fresh += 1
            obj = Obj(f"new {e.type.name}#{self.fresh}")
            self.trace.events.append(CallEvent(None, f"new {e.type.name}", args, obj))
            return obj
        raise OracleError(f"unsupported expression {type(e).__name__}")

    def call(self, e: MethodCall) -> Any:
        if e.receiver is None:
            receiver = "this"
        else:
            value = self.expr(e.receiver)
            if not isinstance(value, (Obj, Sym)):
                raise OracleError(f"call {e.name} on non-object {value!r}")
            receiver = str(value)
        args = tuple(self.expr(a) for a in e.args)
        if e.name not in self.stubs:
            raise OracleError(f"no stub for method {e.name}")
        stub = self.stubs[e.name]
        result = stub(receiver, args) if callable(stub) else stub
        self.trace.events.append(CallEvent(receiver, e.name, args, result))
        return result

    def assign(self, e: Assign) -> Any:
        if not isinstance(e.target, Identifier):
            raise OracleError("only local variables can be assigned")
        value = self.expr(e.value)
        if e.op != "=":
            if e.target.name not in self.env:
                raise OracleError(f"unbound variable {e.target.name}")
            value = _binary(e.op[:-1], self.env[e.target.name], value)
        self.write(e.target.name, value)
        return value

    def unary(self, e: Unary) -> Any:
        if e.op in ("++", "--"):
            if not isinstance(e.operand, Identifier):
                raise OracleError("increment of a non-variable")
            old = self.expr(e.operand)
            new = _binary(e.op[0], old, 1)
            self.write(e.operand.name, new)
            return old if e.postfix else new
        value = self.expr(e.operand)
        if e.op == "!":
            return not self.truth(value)
        if e.op == "-":
            return -_number(value)
        if e.op == "+":
            return _number(value)
        if e.op == "~":
            return ~_number(value)
        raise OracleError(f"unsupported unary operator {e.op}")


def _number(value: Any) -> Union[int, float]:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise OracleError(f"expected a number, got {value!r}")
    return value


def _java_str(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _binary(op: str, left: Any, right: Any) -> Any:
    if op == "+" and (isinstance(left, str) or isinstance(right, str)):
        return _java_str(left) + _java_str(right)
    if op == "==":
        return left == right and type(left) is type(right)
    if op == "!=":
        return not (left == right and type(left) is type(right))
    if op in ("&", "|", "^") and isinstance(left, bool) and isinstance(right, bool):
        return {"&": left and right, "|": left or right, "^": left != right}[op]
    a, b = _number(left), _number(right)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op in ("/", "%"):
        if b == 0:
            raise OracleError("division by zero")
        if isinstance(a, int) and isinstance(b, int):
            q = abs(a) // abs(b) * (1 if (a >= 0) == (b >= 0) else -1)
            return q if op == "/" else a - q * b
        return a / b if op == "/" else a % b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    if op in ("&", "|", "^", "<<", ">>"):
        if not isinstance(a, int) or not isinstance(b, int):
            raise OracleError(f"bitwise {op} on non-integers")
        return {"&": a & b, "|": a | b, "^": a ^ b, "<<": a << b, ">>": a >> b}[op]
    raise OracleError(f"unsupported operator {op}")


_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "0": "\0", "\\": "\\", "'": "'", '"': '"'}


def _unescape(body: str) -> str:
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), body)


def _literal(e: Literal) -> Any:
    if e.kind == "int":
        digits = e.value.rstrip("lL").replace("_", "")
        if re.fullmatch(r"0[0-7]+", digits):
            return int(digits, 8)
        return int(digits, 0)
    if e.kind == "float":
        return float(e.value.rstrip("fFdD"))
    if e.kind in ("string", "char"):
        return _unescape(e.value[1:-1])
    if e.kind == "bool":
        return e.value == "true"
    if e.kind == "null":
        return None
    raise OracleError(f"unsupported literal {e.value}")


_NUMERIC = {"int", "long", "short", "byte", "char", "Integer", "Long", "Short", "Byte"}


def _param_value(type_: str, name: str) -> Any:
    if type_ in _NUMERIC:
        return 0
    if type_ in ("boolean", "Boolean"):
        return False
    if type_ == "String":
        return name
    return Obj(name)


def evaluate(
    snippet: Union[str, Block, MethodDecl, Sequence[Stmt]],
    stubs: Mapping[str, Stub],
    sdk_int: int,
    env: Optional[Mapping[str, Any]] = None,
) -> Trace:
    """Run ``snippet`` and return its trace.

    A method declaration runs its body with parameters bound by type.
    Numeric and boolean parameters start at zero values; other parameters
    evaluate to their own name. ``env`` overrides any of these. Stubs map a
    method name to its return value, or to ``f(receiver, args)``.
    """
    bound: dict[str, Any] = {}
    if isinstance(snippet, MethodDecl):
        if snippet.body is None:
            raise OracleError(f"method {snippet.name} has an opaque body")
        bound = {name: _param_value(type_, name) for type_, name in snippet.params}
        stmts: Sequence[Stmt] = snippet.body.stmts
    elif isinstance(snippet, str):
        stmts = parse_statements(snippet)
    elif isinstance(snippet, Block):
        stmts = snippet.stmts
    else:
        stmts = snippet
    bound.update(env or {})
    interp = _Interpreter(stubs, sdk_int, bound)
    try:
        interp.run(stmts)
    except _Return as ret:
        interp.trace.returned = ret.value
    except (_Break, _Continue):
        raise OracleError("break or continue outside a loop") from None
    except RecursionError:
        raise OracleError("expression nesting too deep") from None
    return interp.trace
