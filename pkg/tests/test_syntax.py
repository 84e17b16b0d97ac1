import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sdkpatch.errors import OverlapError, ParseError
from sdkpatch.java import calls
from sdkpatch.java.edit import splice
from sdkpatch.java.nodes import (
    Assign,
    Binary,
    Expr,
    ExprStmt,
    FieldAccess,
    If,
    LocalVarDecl,
)
from sdkpatch.java.parser import parse_expression, parse_statements, parse_unit

from support import GETTER, corpus_files, java_programs


def wrap(body: str) -> str:
    return f"class A {{\n    void m() {{\n{body}\n    }}\n}}\n"


AFTER_UPDATE = """\
if (android.os.Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
    hour = picker.getHour();
} else {
    hour = picker.getCurrentHour();
}"""

HOUR_IN_CONDITION = """\
if (timePicker.getCurrentHour() > 11)
    itsNoon();"""

HOUR_IN_INITIALIZER = """\
int currentHour = timePicker.getCurrentHour();
if (10 < currentHour)
    itsNoon();"""


# ------------------------------------------------------------------ parse_unit


def test_parse_minimal_class():
    unit = parse_unit("class A { void m() { int x = 1; } }")
    assert [d.name for d in unit.decls] == ["A"]
    (method,) = unit.methods()
    assert method.name == "m"
    (stmt,) = method.body.stmts
    assert isinstance(stmt, LocalVarDecl)
    assert stmt.name == "x"


def test_parse_after_update_example():
    unit = parse_unit(wrap(AFTER_UPDATE))
    (stmt,) = next(unit.methods()).body.stmts
    assert isinstance(stmt, If)
    assert isinstance(stmt.cond, Binary) and stmt.cond.op == ">="
    assert isinstance(stmt.cond.left, FieldAccess) and stmt.cond.left.name == "SDK_INT"
    assert isinstance(stmt.cond.right, FieldAccess) and stmt.cond.right.name == "M"
    (then_stmt,) = stmt.then.stmts
    assert isinstance(then_stmt, ExprStmt) and isinstance(then_stmt.expr, Assign)
    assert then_stmt.expr.target.name == "hour"
    assert then_stmt.expr.value.name == "getHour"
    (else_stmt,) = stmt.orelse.stmts
    assert else_stmt.expr.value.name == "getCurrentHour"


def test_unparseable_body_becomes_opaque():
    unit = parse_unit("class A { void m() { int x = ; } }")
    (method,) = unit.methods()
    assert method.opaque and method.body is None
    assert unit.source(method.body_span) == "{ int x = ; }"


def test_opaque_method_does_not_block_its_neighbours():
    unit = parse_unit("class A { void a() { x -> x; } void b() { log(1); } }")
    assert [(m.name, m.opaque) for m in unit.methods()] == [("a", True), ("b", False)]


@pytest.mark.parametrize("text", ["class A { void m() { ", "class A { int }", "void m() {}", "class { }"])
def test_broken_top_level_raises(text):
    with pytest.raises(ParseError) as info:
        parse_unit(text, "Broken.java")
    assert info.value.offset >= 0
    assert "Broken.java" in str(info.value)


def test_comments_and_generics_survive():
    text = wrap("        // note\n        List<Map<String, Integer>> xs = make(); /* c */ log(xs);")
    unit = parse_unit(text)
    assert not unit.opaque_methods()
    assert splice(unit, []) == text


# ---------------------------------------------------------------------- splice


def test_splice_without_edits_is_identity():
    text = wrap("        timepicker.getCurrentHour();")
    assert splice(parse_unit(text), []) == text


def test_splice_replaces_call_text():
    text = wrap("        timepicker.getCurrentHour();")
    unit = parse_unit(text)
    (stmt,) = next(unit.methods()).body.stmts
    call = stmt.expr
    out = splice(unit, [(call.name_span, "getHour")])
    assert "        timepicker.getHour();" in out
    assert out.replace("getHour", "getCurrentHour") == text


def naive_rebuild(text, edits):
    """Independent oracle: walk characters, emitting replacements at starts."""
    starts = {span[0]: (span[1], rep) for span, rep in edits}
    out, i = [], 0
    while i < len(text):
        if i in starts:
            end, rep = starts[i]
            out.append(rep)
            i = end
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def test_two_disjoint_edits_in_one_statement():
    text = wrap("        log(a.getCurrentHour() + b.getCurrentHour());")
    unit = parse_unit(text)
    (stmt,) = next(unit.methods()).body.stmts
    left, right = stmt.expr.args[0].left, stmt.expr.args[0].right
    edits = [(left.span, "x"), (right.span, "yy")]
    assert splice(unit, edits) == naive_rebuild(text, edits)
    assert "log(x + yy);" in splice(unit, edits)


def test_overlapping_edits_rejected():
    text = wrap("        log(a.getCurrentHour());")
    unit = parse_unit(text)
    (stmt,) = next(unit.methods()).body.stmts
    with pytest.raises(OverlapError):
        splice(unit, [(stmt.span, ""), (stmt.expr.args[0].span, "z")])


@given(st.text(alphabet="ab \n{}();=", max_size=60), st.data())
def test_splice_matches_naive_rebuild(text, data):
    cuts = sorted(data.draw(st.lists(st.integers(0, len(text)), max_size=8)))
    pairs = list(zip(cuts[::2], cuts[1::2]))
    edits = [((s, e), data.draw(st.text(alphabet="xyz", max_size=3))) for s, e in pairs if s < e]
    assert splice(text, edits) == naive_rebuild(text, edits)


# ------------------------------------------------------------------ find_calls


def test_find_calls_in_condition():
    (site,) = calls.find_calls(parse_unit(wrap(HOUR_IN_CONDITION)), GETTER)
    assert site.role == calls.SUBEXPRESSION
    assert isinstance(site.stmt, If)


def test_find_calls_in_initializer():
    (site,) = calls.find_calls(parse_unit(wrap(HOUR_IN_INITIALIZER)), GETTER)
    assert site.role == calls.ASSIGNMENT_RHS
    assert isinstance(site.stmt, LocalVarDecl)


def test_find_calls_standalone_and_ordering():
    text = wrap("        a.getCurrentHour();\n        log(b.getCurrentHour());\n        c.getCurrentHour(1);")
    sites = calls.find_calls(parse_unit(text), GETTER)
    assert [s.role for s in sites] == [calls.STANDALONE, calls.SUBEXPRESSION]
    assert [s.line for s in sites] == [3, 4]


def test_find_calls_none():
    assert calls.find_calls(parse_unit(wrap("        log(1);")), GETTER) == []


def test_find_calls_skips_opaque_methods():
    text = "class A { void m(TimePicker p) { run(() -> p.getCurrentHour()); } }"
    assert calls.find_calls(parse_unit(text), GETTER) == []


# ------------------------------------------------------------------ properties


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: f"{p.parent.name}/{p.name}")
def test_corpus_round_trip_and_span_soundness(path):
    text = path.read_text()
    unit = parse_unit(text, str(path))
    assert splice(unit, []) == text
    for method in unit.methods():
        assert method.body is not None, f"{method.name} is opaque"
        for node in method.body.walk():
            start, end = node.span
            assert 0 <= start <= end <= len(text)
            for child in node.children():
                assert start <= child.span[0] <= child.span[1] <= end
            if isinstance(node, Expr):
                assert parse_expression(unit.source(node)) == node
        for ctx in calls.iter_statements(method.body):
            assert parse_statements(unit.source(ctx.stmt)) == (ctx.stmt,)


@given(java_programs("getter"))
def test_generated_round_trip(text):
    unit = parse_unit(text)
    assert not unit.opaque_methods()
    assert splice(unit, []) == text


_TOKEN_GAP = re.compile(r"(?<=[;{}])\n")


@given(java_programs("getter"), st.sampled_from(["\n", "\n\n   ", " // gap\n", " /* gap */\n"]))
def test_find_calls_stable_under_layout(text, gap):
    relaid = _TOKEN_GAP.sub(gap, text)
    before = calls.find_calls(parse_unit(text), GETTER)
    after = calls.find_calls(parse_unit(relaid), GETTER)
    assert [(s.role, s.expr) for s in before] == [(s.role, s.expr) for s in after]
