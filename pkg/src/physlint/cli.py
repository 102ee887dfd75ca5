"""Command-line entry point.

    physlint check MODEL.xml [--format text|json] [--kb FILE] [--registry FILE]
                             [--fail-on-error] [--verbose] [--structural-only]
    physlint corpus DIR [--manifest FILE] [--kb FILE] [--registry FILE]

Exit status of ``check``: 0 when no active diagnostics (or ``--fail-on-error``
is not given), 1 when diagnostics exist and ``--fail-on-error`` is set, 2 on
unreadable or malformed input.  ``corpus`` exits 0 iff every model matches its
expected counts.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, TextIO

from physlint.inspections import is_structural_only, run_all
from physlint.kb import KBError, KnowledgeBase, load_kb
from physlint.model import FlowTypeRegistry, RegistryError, load_registry
from physlint.report import SubCode, render_json, render_text, summarize
from physlint.xmi import ModelInputError, ingest

EXIT_OK = 0
EXIT_DIAGNOSTICS = 1
EXIT_INPUT_ERROR = 2

MANIFEST_NAME = "manifest.txt"


def _load_config(args: argparse.Namespace) -> tuple[FlowTypeRegistry, KnowledgeBase]:
    return load_registry(args.registry), load_kb(args.kb)


def _check(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        registry, kb = _load_config(args)
        store = ingest(args.model, registry)
    except (OSError, ModelInputError, RegistryError, KBError) as exc:
        print(f"physlint: error: {exc}", file=err)
        return EXIT_INPUT_ERROR

    structural = is_structural_only(store, kb, args.structural_only)
    diags = run_all(store, kb, registry, structural_only=args.structural_only, include_suppressed=args.verbose)
    summary = summarize(diags, store.name, structural)
    if args.format == "json":
        out.write(render_json(diags, summary) + "\n")
    else:
        out.write(render_text(diags, summary, verbose=args.verbose))
    if args.verbose:
        for warning in store.warnings:
            print(f"physlint: warning: {warning}", file=err)
        for ref in store.unresolved:
            print(f"physlint: warning: {ref.referrer_id} {ref.attribute} -> {ref.target_id!r} is undefined", file=err)
    if summary.total and args.fail_on_error:
        return EXIT_DIAGNOSTICS
    return EXIT_OK


# ---------------------------------------------------------------------------
# Corpus runs
# ---------------------------------------------------------------------------


class ManifestError(ValueError):
    pass


@dataclass
class CorpusEntry:
    model: str
    expected: dict[SubCode, int]
    actual: dict[SubCode, int] = field(default_factory=dict)
    error: str = ""

    @property
    def passed(self) -> bool:
        return not self.error and self.actual == self.expected


def parse_manifest(text: str, source: str = MANIFEST_NAME) -> list[tuple[str, dict[SubCode, int]]]:
    """Parse ``model_path sub_code=count ...`` lines; omitted sub-codes expect 0."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        expected: dict[SubCode, int] = {}
        for item in fields[1:]:
            key, sep, value = item.partition("=")
            try:
                code = SubCode(key)
                count = int(value)
            except ValueError:
                raise ManifestError(f"{source}:{lineno}: bad expectation {item!r}") from None
            if not sep or count < 0:
                raise ManifestError(f"{source}:{lineno}: bad expectation {item!r}")
            if count:
                expected[code] = count
        entries.append((fields[0], expected))
    return entries


def evaluate_corpus(
    directory: Path,
    manifest: Path | None,
    registry: FlowTypeRegistry,
    kb: KnowledgeBase,
) -> list[CorpusEntry]:
    directory = Path(directory)
    if manifest is None and (directory / MANIFEST_NAME).exists():
        manifest = directory / MANIFEST_NAME
    if manifest is not None:
        plan = parse_manifest(Path(manifest).read_text(encoding="utf-8"), str(manifest))
    else:
        # no manifest: every model in the directory is expected to be clean
        plan = [(p.name, {}) for p in sorted(directory.glob("*.xml"))]

    results = []
    for model, expected in plan:
        entry = CorpusEntry(model, expected)
        try:
            store = ingest(directory / model, registry)
        except (OSError, ModelInputError) as exc:
            entry.error = str(exc)
        else:
            diags = run_all(store, kb, registry)
            tally = Counter(d.sub_code for d in diags if not d.suppressed)
            entry.actual = {code: tally[code] for code in SubCode if tally[code]}
        results.append(entry)
    return results


def _format_counts(counts: dict[SubCode, int]) -> str:
    return " ".join(f"{code.value}={n}" for code, n in counts.items()) or "(none)"


def run_corpus(
    directory: Path,
    manifest: Path | None = None,
    registry: FlowTypeRegistry | None = None,
    kb: KnowledgeBase | None = None,
    out: TextIO = sys.stdout,
) -> int:
    registry = registry or load_registry()
    kb = kb if kb is not None else load_kb()
    results = evaluate_corpus(directory, manifest, registry, kb)
    for entry in results:
        if entry.error:
            out.write(f"FAIL {entry.model}: {entry.error}\n")
        elif entry.passed:
            out.write(f"PASS {entry.model}: {_format_counts(entry.actual)}\n")
        else:
            out.write(
                f"FAIL {entry.model}: expected {_format_counts(entry.expected)}, got {_format_counts(entry.actual)}\n"
            )
    passed = sum(e.passed for e in results)
    noun = "model" if len(results) == 1 else "models"
    out.write(f"{len(results)} {noun}, {passed} passed, {len(results) - passed} failed\n")
    return EXIT_OK if passed == len(results) else EXIT_DIAGNOSTICS


def _corpus(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    try:
        registry, kb = _load_config(args)
        return run_corpus(Path(args.directory), Path(args.manifest) if args.manifest else None, registry, kb, out)
    except (OSError, RegistryError, KBError, ManifestError) as exc:
        print(f"physlint: error: {exc}", file=err)
        return EXIT_INPUT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="physlint", description="Physics-based consistency checks for SysML models.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kb", metavar="PATH", help="functional knowledge base file (default: built-in 18 verbs)")
    common.add_argument("--registry", metavar="PATH", help="flow-type registry file (default: built-in)")

    check = sub.add_parser("check", parents=[common], help="inspect one model file")
    check.add_argument("model", help="canonical or XMI model file")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--fail-on-error", action="store_true", help="exit 1 when any diagnostic is reported")
    check.add_argument("--verbose", action="store_true", help="show suppressed diagnostics, notes and warnings")
    check.add_argument("--structural-only", action="store_true", help="skip activity-diagram inspections")
    check.set_defaults(handler=_check)

    corpus = sub.add_parser("corpus", parents=[common], help="run a directory of models against expected counts")
    corpus.add_argument("directory")
    corpus.add_argument("--manifest", metavar="PATH", help=f"expectations file (default: DIR/{MANIFEST_NAME})")
    corpus.set_defaults(handler=_corpus)
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    return args.handler(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
