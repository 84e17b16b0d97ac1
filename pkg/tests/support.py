"""Shared fixtures for the test suite: corpus access, oracle stubs and
random program generators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from hypothesis import strategies as st

from sdkpatch.java.calls import find_calls
from sdkpatch.java.nodes import If, SourceUnit
from sdkpatch.java.parser import parse_unit
from sdkpatch.mapping import ApiMapping, load_mapping
from sdkpatch.oracle import VERSION_CODES, Obj, evaluate
from sdkpatch.synthesize import replacement_arg_indices

CORPUS = Path(__file__).parent / "corpus"
APIS = sorted(p.name for p in CORPUS.iterdir() if p.is_dir())
NEEDS_DATA_FLOW = {"getAllNetworkInfo", "requestAudioFocus"}
UPDATABLE = [a for a in APIS if a not in NEEDS_DATA_FLOW]


@dataclass(frozen=True)
class CorpusApi:
    name: str
    mapping: ApiMapping
    mapping_path: Path
    example_path: Path
    targets: tuple[Path, ...]


@lru_cache(maxsize=None)
def corpus_api(name: str) -> CorpusApi:
    d = CORPUS / name
    return CorpusApi(
        name=name,
        mapping=load_mapping(d / "mapping.json"),
        mapping_path=d / "mapping.json",
        example_path=d / "example.java",
        targets=tuple(sorted(d.glob("target_*.java"))),
    )


def corpus_files() -> list[Path]:
    return sorted(CORPUS.glob("*/*.java"))


# Helper methods the corpus and the generators call, with fixed results.
HELPER_STUBS = {
    "log": None,
    "itsNoon": None,
    "store": None,
    "start": None,
    "drawContent": None,
    "restore": None,
    "restoreToCount": None,
    "setIs24HourView": None,
    "query": None,
    "recordAll": None,
    "get": 9,
    "findPicker": Obj("pickerFromView"),
    "findTitle": Obj("titleFromView"),
    "findViewById": Obj("viewById"),
    "getContext": Obj("context"),
    "getContentResolver": Obj("resolver"),
    "acquireContentProviderClient": Obj("client"),
    "getSystemService": Obj("service"),
}

_RESULTS = {"int": 14, "Integer": 14, "String": "imei-1", "boolean": True, "void": None}


def api_stubs(mapping: ApiMapping) -> dict:
    """Stubs where the deprecated and replacement methods answer alike."""
    result = _RESULTS.get(mapping.return_type, Obj("apiResult"))
    return {**HELPER_STUBS, mapping.deprecated_method: result, mapping.replacement_method: result}


def gate(mapping: ApiMapping) -> int:
    return VERSION_CODES[mapping.since_version]


def methods_using(unit: SourceUnit, mapping: ApiMapping) -> list[str]:
    return sorted({site.method.name for site in find_calls(unit, mapping)})


def trace_problems(mapping: ApiMapping, original: str, updated: str) -> list[str]:
    """Compare oracle traces of every method that used the deprecated API.

    Below the gate the updated method must behave exactly like the original.
    At the gate it must behave like the original with the deprecated calls
    renamed and their arguments narrowed to the replacement's.
    """
    before_unit, after_unit = parse_unit(original), parse_unit(updated)
    after_methods = {m.name: m for m in after_unit.methods()}
    stubs = api_stubs(mapping)
    keep = replacement_arg_indices(mapping)
    problems = []
    for name in methods_using(before_unit, mapping):
        before_method = next(m for m in before_unit.methods() if m.name == name)
        for sdk in (gate(mapping) - 1, gate(mapping)):
            expected = evaluate(before_method, stubs, sdk)
            if sdk >= gate(mapping):
                expected = expected.substitute(mapping.deprecated_method, mapping.replacement_method, keep)
            actual = evaluate(after_methods[name], stubs, sdk).without_temps()
            if actual != expected:
                problems.append(f"{name} at sdk {sdk}: {actual.events} != {expected.events}")
    return problems


def old_calls_in_else(unit: SourceUnit, mapping: ApiMapping) -> bool:
    """Every deprecated call sits in the else branch of an SDK_INT check."""
    for site in find_calls(unit, mapping):
        start, end = site.expr.span
        guarded = any(
            isinstance(anc, If)
            and anc.orelse is not None
            and "SDK_INT" in unit.source(anc.cond)
            and anc.orelse.span[0] <= start
            and end <= anc.orelse.span[1]
            for anc in site.context.ancestors
        )
        if not guarded:
            return False
    return True


# ------------------------------------------------------------ generators

GETTER = ApiMapping(
    deprecated_class="android.widget.TimePicker",
    deprecated_method="getCurrentHour",
    param_types=(),
    return_type="int",
    replacement_method="getHour",
    replacement_param_types=(),
    since_version="M",
)

SETTER = ApiMapping(
    deprecated_class="android.widget.TextView",
    deprecated_method="setTextAppearance",
    param_types=("Context", "int"),
    return_type="void",
    replacement_method="setTextAppearance",
    replacement_param_types=("int",),
    since_version="M",
)

GETTER_RECEIVERS = ["picker", "findPicker()", "((TimePicker) findViewById(R.id.clock))", "this.picker"]
SETTER_RECEIVERS = ["label", "findTitle()", "((TextView) findViewById(R.id.title))"]
# Receivers are hoisted after the arguments, so behaviour comparisons only
# use receivers whose evaluation has no observable effect.
PURE_SETTER_RECEIVERS = ["label", "this.label", "((TextView) label)"]
CONTEXTS = ["context", "getContext()"]
STYLES = ["R.style.Big", "android.R.style.TextAppearance_Large", "acc + 1", "7"]

_small = st.integers(min_value=0, max_value=30)


@st.composite
def _getter_stmt(draw, depth: int, counter: list) -> str:
    recv = draw(st.sampled_from(GETTER_RECEIVERS))
    call = f"{recv}.getCurrentHour()"
    n = draw(_small)
    kinds = ["bare", "init", "assign", "cond", "concat", "arith", "plain"]
    if depth < 2:
        kinds += ["block", "unbraced"]
    kind = draw(st.sampled_from(kinds))
    if kind == "bare":
        return f"{call};"
    if kind == "init":
        counter[0] += 1
        return f"int v{counter[0]} = {call};"
    if kind == "assign":
        return f"acc = {call} + {n};"
    if kind == "cond":
        return f"if ({call} > {n}) log({n}); else log(acc);"
    if kind == "concat":
        return f'log("h" + {call});'
    if kind == "arith":
        return f"acc += {n};"
    if kind == "plain":
        return f"log(acc * {n});"
    if kind == "unbraced":
        # a declaration cannot be the whole body of a branch
        inner = draw(_getter_stmt(depth + 1, counter).filter(lambda s: not s.startswith("int ")))
        return f"if (!flag)\n{inner}\nelse\nlog(0);"
    inner = draw(_getter_stmt(depth + 1, counter))
    more = draw(_getter_stmt(depth + 1, counter))
    return f"if (flag) {{\n{inner}\n{more}\n}}"


@st.composite
def _setter_stmt(draw, depth: int, receivers: list[str]) -> str:
    recv = draw(st.sampled_from(receivers))
    call = f"{recv}.setTextAppearance({draw(st.sampled_from(CONTEXTS))}, {draw(st.sampled_from(STYLES))});"
    kinds = ["call", "call", "arith", "plain"]
    if depth < 2:
        kinds += ["block", "unbraced", "loop"]
    kind = draw(st.sampled_from(kinds))
    if kind == "call":
        return call
    if kind == "arith":
        return f"acc = acc + {draw(_small)};"
    if kind == "plain":
        return "log(acc);"
    inner = draw(_setter_stmt(depth + 1, receivers))
    if kind == "block":
        return f"if (flag) {{\n{inner}\n}} else {{\nlog(1);\n}}"
    if kind == "loop":
        return f"for (int i{depth} = 0; i{depth} < 2; i{depth}++) {{\n{inner}\n}}"
    return f"if (flag)\n{inner}"


def _indent(lines: list[str]) -> str:
    out, depth = [], 2
    for stmt in lines:
        for raw in stmt.split("\n"):
            if raw.startswith("}"):
                depth -= 1
            out.append("    " * depth + raw)
            if raw.endswith("{"):
                depth += 1
    return "\n".join(out)


@st.composite
def java_programs(draw, api: str = "getter", pure_receivers: bool = False) -> str:
    """A class with one method exercising the API in varied roles."""
    flag = draw(st.booleans())
    counter = [0]
    if api == "getter":
        stmts = draw(st.lists(_getter_stmt(0, counter), min_size=1, max_size=5))
        params = "TimePicker picker"
    else:
        receivers = PURE_SETTER_RECEIVERS if pure_receivers else SETTER_RECEIVERS
        stmts = draw(st.lists(_setter_stmt(0, receivers), min_size=1, max_size=5))
        params = "TextView label, Context context"
    body = [f"boolean flag = {'true' if flag else 'false'};", "int acc = 0;"] + stmts
    return f"class Generated {{\n    void run({params}) {{\n{_indent(body)}\n    }}\n}}\n"


def program_mapping(api: str) -> ApiMapping:
    return GETTER if api == "getter" else SETTER
