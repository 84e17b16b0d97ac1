"""Command line entry point.

    sdkpatch create-patch --mapping M.json --example Example.java --out update.cocci
    sdkpatch apply-update --mapping M.json --patch update.cocci Target.java ... (--in-place | --out DIR | --dry-run)
    sdkpatch normalize    --mapping M.json Target.java (--in-place | --out PATH | --dry-run)
    sdkpatch check        --mapping M.json Target.java ...

Exit status: 0 when something was produced or found, 1 when there was
nothing to do, 2 on any error.
"""

from __future__ import annotations

import argparse
import difflib
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import SdkPatchError
from .java.calls import find_calls
from .java.parser import parse_unit
from .mapping import load_mapping
from .normalize import normalize_unit
from .pipeline import hidden_usages, learn_patch, update_source
from .smpl.patch import parse_patch

log = logging.getLogger("sdkpatch")

EXIT_OK = 0
EXIT_NOTHING = 1
EXIT_ERROR = 2


@dataclass
class FileReport:
    path: str
    call_sites_found: int = 0
    matches_applied: int = 0
    skips_already_updated: int = 0
    errors: list[str] = field(default_factory=list)
    locations: list[str] = field(default_factory=list)


@dataclass
class RunReport:
    per_file: list[FileReport] = field(default_factory=list)
    exit_code: int = EXIT_OK

    @property
    def errors(self) -> list[str]:
        return [e for f in self.per_file for e in f.errors]

    def finish(self, produced: bool) -> "RunReport":
        self.per_file.sort(key=lambda f: f.path)
        if self.errors:
            self.exit_code = EXIT_ERROR
        else:
            self.exit_code = EXIT_OK if produced else EXIT_NOTHING
        return self


def atomic_write(path: str | Path, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see a
    partial file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def unified_diff(path: str, before: str, after: str) -> str:
    return "".join(
        difflib.unified_diff(
            before.splitlines(keepends=True),
            after.splitlines(keepends=True),
            fromfile=f"a/{path.lstrip('/')}",
            tofile=f"b/{path.lstrip('/')}",
        )
    )


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(report_path: str, before: str, after: str, mode: str, out: Optional[str], many: bool) -> None:
    if mode == "dry-run":
        diff = unified_diff(report_path, before, after)
        if diff:
            sys.stdout.write(diff)
    elif mode == "in-place":
        if after != before:
            atomic_write(report_path, after)
    elif mode == "out":
        dest = Path(out) / Path(report_path).name if many else Path(out)
        atomic_write(dest, after)


# ------------------------------------------------------------------ commands


def cmd_create_patch(mapping_path: str, example_path: str, out_path: str) -> RunReport:
    report = RunReport()
    fr = FileReport(example_path)
    report.per_file.append(fr)
    try:
        mapping = load_mapping(mapping_path)
        learned = learn_patch(mapping, _read(example_path), example_path)
        fr.call_sites_found = len(find_calls(learned.normalized_example, mapping))
        atomic_write(out_path, learned.text)
        log.info("wrote %s (%d rule(s))", out_path, len(learned.patch.rules))
    except (SdkPatchError, OSError) as exc:
        fr.errors.append(f"{type(exc).__name__}: {exc}")
    return report.finish(produced=not fr.errors)


def cmd_apply_update(
    mapping_path: str,
    patch_path: str,
    target_paths: Sequence[str],
    mode: str,
    out: Optional[str] = None,
) -> RunReport:
    report = RunReport()
    try:
        mapping = load_mapping(mapping_path)
        patch = parse_patch(_read(patch_path))
    except (SdkPatchError, OSError) as exc:
        report.per_file.append(FileReport(patch_path, errors=[f"{type(exc).__name__}: {exc}"]))
        return report.finish(False)
    names = [Path(p).name for p in target_paths]
    if mode == "out" and len(set(names)) != len(names):
        report.per_file.append(FileReport(out or "", errors=["--out DIR needs distinct target file names"]))
        return report.finish(False)
    for path in target_paths:
        fr = FileReport(path)
        report.per_file.append(fr)
        try:
            update = update_source(mapping, patch, _read(path), path)
        except (SdkPatchError, OSError) as exc:
            fr.errors.append(f"{type(exc).__name__}: {exc}")
            continue
        for warning in update.warnings:
            log.warning("%s", warning)
        fr.call_sites_found = update.call_sites
        fr.matches_applied = update.applied
        fr.skips_already_updated = update.skipped
        try:
            _emit(path, update.original, update.text, mode, out, many=True)
        except OSError as exc:
            fr.errors.append(f"{type(exc).__name__}: {exc}")
    applied = sum(f.matches_applied for f in report.per_file)
    return report.finish(produced=applied > 0)


def cmd_normalize(mapping_path: str, target_path: str, mode: str, out: Optional[str] = None) -> RunReport:
    report = RunReport()
    fr = FileReport(target_path)
    report.per_file.append(fr)
    changed = False
    try:
        mapping = load_mapping(mapping_path)
        text = _read(target_path)
        unit = parse_unit(text, target_path)
        fr.call_sites_found = len(find_calls(unit, mapping))
        for warning in hidden_usages(unit, mapping):
            log.warning("%s", warning)
        result = normalize_unit(unit, mapping).text
        changed = result != text
        _emit(target_path, text, result, mode, out, many=False)
    except (SdkPatchError, OSError) as exc:
        fr.errors.append(f"{type(exc).__name__}: {exc}")
    return report.finish(produced=changed)


def cmd_check(mapping_path: str, target_paths: Sequence[str]) -> RunReport:
    report = RunReport()
    if not target_paths:
        report.per_file.append(FileReport("", errors=["no target files given"]))
        return report.finish(False)
    try:
        mapping = load_mapping(mapping_path)
    except SdkPatchError as exc:
        report.per_file.append(FileReport(mapping_path, errors=[f"{type(exc).__name__}: {exc}"]))
        return report.finish(False)
    for path in target_paths:
        fr = FileReport(path)
        report.per_file.append(fr)
        try:
            unit = parse_unit(_read(path), path)
        except (SdkPatchError, OSError) as exc:
            fr.errors.append(f"{type(exc).__name__}: {exc}")
            continue
        sites = find_calls(unit, mapping)
        fr.call_sites_found = len(sites)
        fr.locations = [f"{s.location}: {s.role}: {unit.source(s.expr)}" for s in sites]
        for warning in hidden_usages(unit, mapping):
            log.warning("%s", warning)
    found = sum(f.call_sites_found for f in report.per_file)
    return report.finish(produced=found > 0)


# ---------------------------------------------------------------------- main


def _add_mode(parser: argparse.ArgumentParser, out_help: str) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--in-place", action="store_true", help="rewrite targets in place")
    group.add_argument("--out", metavar="PATH", help=out_help)
    group.add_argument("--dry-run", action="store_true", help="print a unified diff; write nothing")


def _mode(args: argparse.Namespace) -> str:
    if args.in_place:
        return "in-place"
    if args.dry_run:
        return "dry-run"
    return "out"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdkpatch",
        description="Learn deprecated Android API updates from one example and apply them.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("create-patch", help="learn an update patch from an after-update example")
    p.add_argument("--mapping", required=True)
    p.add_argument("--example", required=True)
    p.add_argument("--out", required=True, help="where to write the patch")

    p = sub.add_parser("apply-update", help="normalize targets and apply an update patch")
    p.add_argument("--mapping", required=True)
    p.add_argument("--patch", required=True)
    p.add_argument("targets", nargs="+")
    _add_mode(p, "directory receiving updated copies")

    p = sub.add_parser("normalize", help="only normalize API call sites")
    p.add_argument("--mapping", required=True)
    p.add_argument("target")
    _add_mode(p, "file receiving the normalized source")

    p = sub.add_parser("check", help="list deprecated API call sites")
    p.add_argument("--mapping", required=True)
    p.add_argument("targets", nargs="*")
    return parser


def _print_report(command: str, report: RunReport) -> None:
    for fr in report.per_file:
        for loc in fr.locations:
            print(loc)
        for err in fr.errors:
            print(f"error: {err}", file=sys.stderr)
        if command == "apply-update" and not fr.errors:
            print(
                f"{fr.path}: {fr.call_sites_found} call site(s), {fr.matches_applied} updated, "
                f"{fr.skips_already_updated} already guarded",
                file=sys.stderr,
            )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    if args.command == "create-patch":
        report = cmd_create_patch(args.mapping, args.example, args.out)
    elif args.command == "apply-update":
        report = cmd_apply_update(args.mapping, args.patch, args.targets, _mode(args), args.out)
    elif args.command == "normalize":
        report = cmd_normalize(args.mapping, args.target, _mode(args), args.out)
    else:
        if not args.targets:
            parser.error("check: at least one target file is required")
        report = cmd_check(args.mapping, args.targets)
    _print_report(args.command, report)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
