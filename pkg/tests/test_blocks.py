import textwrap

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sdkpatch.blocks import (
    NEW_IN_ELSE,
    NEW_IN_THEN,
    SHAPE_ASSIGNMENT,
    SHAPE_EXPR_STMT,
    VersionGuard,
    as_version_guard,
    extract_update_block,
    normalize_version_conditions,
    validate_block,
)
from sdkpatch.errors import NoValidBlock
from sdkpatch.java.calls import iter_statements
from sdkpatch.java.nodes import If
from sdkpatch.java.parser import parse_expression, parse_unit
from sdkpatch.normalize import normalize_unit

from support import GETTER, SETTER, UPDATABLE, corpus_api


def wrap(body: str, params: str = "TimePicker picker") -> str:
    body = textwrap.indent(textwrap.dedent(body).strip("\n"), " " * 8)
    return f"class A {{\n    void m({params}) {{\n{body}\n    }}\n}}\n"


def prepared(text: str, mapping=GETTER):
    return normalize_version_conditions(normalize_unit(parse_unit(text), mapping))


# ------------------------------------------------------------ version guards


@pytest.mark.parametrize(
    "cond, guard",
    [
        ("Build.VERSION.SDK_INT >= Build.VERSION_CODES.M", VersionGuard(">=", "M")),
        ("android.os.Build.VERSION.SDK_INT > android.os.Build.VERSION_CODES.N", VersionGuard(">", "N")),
        ("VERSION.SDK_INT < VERSION_CODES.O", VersionGuard("<", "O")),
        ("Build.VERSION_CODES.M <= Build.VERSION.SDK_INT", VersionGuard(">=", "M")),
        ("(Build.VERSION.SDK_INT >= 23)", VersionGuard(">=", "23", is_literal=True)),
        ("Build.VERSION.SDK_INT == Build.VERSION_CODES.M", None),
        ("flag && Build.VERSION.SDK_INT >= Build.VERSION_CODES.M", None),
        ("x > 0", None),
        ("Build.VERSION.SDK_INT >= Build.VERSION.SDK_INT", None),
    ],
)
def test_guard_recognition(cond, guard):
    assert as_version_guard(parse_expression(cond)) == guard


# ------------------------------------------------------ condition rewriting


def test_version_statement_normalization_golden():
    text = wrap(
        """
        int currentBuildVersion = Build.VERSION.SDK_INT;
        int marshmallowVersion = Build.VERSION_CODES.M;
        if (currentBuildVersion >= marshmallowVersion) {
            timePicker.setHour(1);
        }
        """
    )
    out = normalize_version_conditions(parse_unit(text)).text
    expected = text.replace(
        "if (currentBuildVersion >= marshmallowVersion) {",
        "if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {",
    )
    assert out == expected


def test_canonical_condition_unchanged():
    text = wrap("if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {\n    log(1);\n}")
    unit = parse_unit(text)
    assert normalize_version_conditions(unit) is unit


def test_reassigned_variable_is_not_replaced():
    text = wrap(
        """
        int sdk = Build.VERSION.SDK_INT;
        sdk = 3;
        if (sdk >= Build.VERSION_CODES.M) {
            log(1);
        }
        """
    )
    assert normalize_version_conditions(parse_unit(text)).text == text


def test_last_assignment_wins():
    text = wrap(
        """
        int level = 3;
        level = android.os.Build.VERSION.SDK_INT;
        if (level < Build.VERSION_CODES.N) {
            log(1);
        }
        """
    )
    out = normalize_version_conditions(parse_unit(text)).text
    assert "if (android.os.Build.VERSION.SDK_INT < Build.VERSION_CODES.N) {" in out


def test_tracking_does_not_cross_blocks():
    text = wrap(
        """
        int sdk = Build.VERSION.SDK_INT;
        if (flag) {
            if (sdk >= Build.VERSION_CODES.M) {
                log(1);
            }
        }
        """,
        "boolean flag",
    )
    assert normalize_version_conditions(parse_unit(text)).text == text


# Straight-line blocks of declarations and reassignments, then one guard.
_VALUES = ["Build.VERSION.SDK_INT", "Build.VERSION_CODES.M", "Build.VERSION_CODES.O", "3", "other()"]


@st.composite
def _assignment_runs(draw):
    names = ["a", "b", "c"]
    stmts = [f"int {n} = {draw(st.sampled_from(_VALUES))};" for n in names]
    for _ in range(draw(st.integers(0, 5))):
        stmts.append(f"{draw(st.sampled_from(names))} = {draw(st.sampled_from(_VALUES))};")
    left, right = draw(st.sampled_from(names)), draw(st.sampled_from(names))
    op = draw(st.sampled_from([">=", ">", "<=", "<"]))
    return stmts, left, op, right


def _last_values(stmts):
    """Independent oracle: replay the assignments in order."""
    values = {}
    for stmt in stmts:
        target, value = stmt.rstrip(";").replace("int ", "").split(" = ")
        values[target] = value
    return values


@given(_assignment_runs())
def test_condition_rewriting_matches_replay(run):
    stmts, left, op, right = run
    text = wrap("\n".join(stmts) + f"\nif ({left} {op} {right}) {{\n    log(1);\n}}", "")
    out = normalize_version_conditions(parse_unit(text))
    values = _last_values(stmts)
    expected = [values[n] if values[n].startswith("Build.") else n for n in (left, right)]
    (cond_if,) = [c.stmt for c in iter_statements(next(out.methods()).body) if isinstance(c.stmt, If)]
    assert out.source(cond_if.cond) == f"{expected[0]} {op} {expected[1]}"
    assert normalize_version_conditions(out).text == out.text


# -------------------------------------------------------------- extraction


AFTER_UPDATE = """
int hour;
if (android.os.Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
    hour = picker.getHour();
} else {
    hour = picker.getCurrentHour();
}
"""


def test_extract_after_update_example():
    block = extract_update_block(prepared(wrap(AFTER_UPDATE)), GETTER)
    assert block.guard == VersionGuard(">=", "M")
    assert block.polarity == NEW_IN_THEN
    assert block.old_call_shape == SHAPE_ASSIGNMENT
    assert block.assign_target == "tempFunctionReturnValue"
    assert "getHour" in block.unit.source(block.new_branch[0])
    assert any("getCurrentHour" in block.unit.source(s) for s in block.old_branch)
    assert validate_block(block, GETTER) == []


def test_non_version_condition_rejected():
    text = wrap(
        """
        if (x > 0) {
            picker.getHour();
        } else {
            picker.getCurrentHour();
        }
        """,
        "TimePicker picker, int x",
    )
    with pytest.raises(NoValidBlock):
        extract_update_block(prepared(text), GETTER)


def test_reversed_guard_gives_new_in_else():
    text = wrap(
        """
        if (Build.VERSION.SDK_INT < Build.VERSION_CODES.M) {
            picker.getCurrentHour();
        } else {
            picker.getHour();
        }
        """
    )
    block = extract_update_block(prepared(text), GETTER)
    assert block.polarity == NEW_IN_ELSE
    assert block.old_call_shape == SHAPE_EXPR_STMT
    assert validate_block(block, GETTER) == []


def test_example_guard_via_local_variables():
    text = wrap(
        """
        int sdk = Build.VERSION.SDK_INT;
        if (sdk >= Build.VERSION_CODES.M) {
            picker.getHour();
        } else {
            picker.getCurrentHour();
        }
        """
    )
    assert extract_update_block(prepared(text), GETTER).guard == VersionGuard(">=", "M")


@pytest.mark.parametrize(
    "then, orelse",
    [
        ("picker.getHour();", "log(1);"),
        ("picker.getHour(); picker.getCurrentHour();", "picker.getCurrentHour();"),
        ("picker.getCurrentHour();", "picker.getCurrentHour();"),
    ],
)
def test_incomplete_blocks_rejected(then, orelse):
    text = wrap(f"if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {{ {then} }} else {{ {orelse} }}")
    with pytest.raises(NoValidBlock):
        extract_update_block(prepared(text), GETTER)


def test_first_valid_block_wins():
    text = wrap(
        """
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.N) {
            picker.getHour();
        } else {
            picker.getCurrentHour();
        }
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            picker.getHour();
        } else {
            picker.getCurrentHour();
        }
        """
    )
    assert extract_update_block(prepared(text), GETTER).guard.version == "N"


def test_arity_distinguishes_same_named_methods():
    text = wrap(
        """
        if (Build.VERSION.SDK_INT >= Build.VERSION_CODES.M) {
            label.setTextAppearance(5);
        } else {
            label.setTextAppearance(context, 5);
        }
        """,
        "TextView label, Context context",
    )
    block = extract_update_block(prepared(text, SETTER), SETTER)
    assert validate_block(block, SETTER) == []


@pytest.mark.parametrize("api", UPDATABLE)
def test_corpus_examples_yield_valid_blocks(api):
    entry = corpus_api(api)
    unit = prepared(entry.example_path.read_text(), entry.mapping)
    block = extract_update_block(unit, entry.mapping)
    assert validate_block(block, entry.mapping) == []


_BRANCH_STMTS = ["picker.getHour();", "picker.getCurrentHour();", "log(1);", "picker.getHour(1);"]
_CONDS = ["Build.VERSION.SDK_INT >= Build.VERSION_CODES.M", "VERSION.SDK_INT < 23", "flag", "x > 1"]


def _block_expected(cond, then, orelse):
    """Independent oracle over the statement strings themselves."""
    if cond in ("flag", "x > 1"):
        return None
    new, old = "picker.getHour();", "picker.getCurrentHour();"
    if new in then and old not in then and old in orelse and new not in orelse:
        return NEW_IN_THEN
    if new in orelse and old not in orelse and old in then and new not in then:
        return NEW_IN_ELSE
    return None


@given(
    st.sampled_from(_CONDS),
    st.lists(st.sampled_from(_BRANCH_STMTS), max_size=3),
    st.lists(st.sampled_from(_BRANCH_STMTS), max_size=3),
)
def test_returned_blocks_always_valid(cond, then, orelse):
    text = wrap(
        f"if ({cond}) {{\n{' '.join(then)}\n}} else {{\n{' '.join(orelse)}\n}}",
        "TimePicker picker, boolean flag, int x",
    )
    unit = normalize_version_conditions(parse_unit(text))
    expected = _block_expected(cond, then, orelse)
    try:
        block = extract_update_block(unit, GETTER)
    except NoValidBlock:
        assert expected is None
        return
    assert block.polarity == expected
    assert validate_block(block, GETTER) == []
