"""Functional knowledge base: one arity/flow-class rule per function verb."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from physlint.model import FlowClass


class KBError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<kb>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class DuplicateVerbError(KBError):
    pass


_CLASS_LETTERS = {"M": FlowClass.MATERIAL, "E": FlowClass.ENERGY}
_LETTER_OF = {v: k for k, v in _CLASS_LETTERS.items()}


def _format_classes(classes: frozenset[FlowClass]) -> str:
    return ",".join(_LETTER_OF[c] for c in (FlowClass.MATERIAL, FlowClass.ENERGY) if c in classes) or "-"


def _format_range(lo: int, hi: int | None) -> str:
    if hi is None:
        return f"{lo}..*"
    return str(lo) if lo == hi else f"{lo}..{hi}"


@dataclass(frozen=True)
class FunctionRule:
    """Expected flows around an action whose name starts with ``verb``.

    ``max_inputs``/``max_outputs`` of None mean unbounded.  An empty class set
    is only legal on a side whose maximum is 0.
    """

    verb: str
    min_inputs: int
    max_inputs: int | None
    min_outputs: int
    max_outputs: int | None
    allowed_input_classes: frozenset[FlowClass]
    allowed_output_classes: frozenset[FlowClass]
    notes: str = ""

    def __post_init__(self) -> None:
        for side, lo, hi, classes in (
            ("input", self.min_inputs, self.max_inputs, self.allowed_input_classes),
            ("output", self.min_outputs, self.max_outputs, self.allowed_output_classes),
        ):
            if lo < 0 or (hi is not None and hi < lo):
                raise ValueError(f"{self.verb}: bad {side} bounds {lo}..{hi}")
            if FlowClass.UNKNOWN in classes:
                raise ValueError(f"{self.verb}: {side} classes may only be Material/Energy")
            if not classes and hi != 0:
                raise ValueError(f"{self.verb}: empty {side} class set needs max {side}s = 0")

    def describe(self) -> str:
        def side(lo, hi, classes, noun):
            if hi == 0:
                return f"no {noun}s"
            return f"{_format_range(lo, hi)} {noun}(s) of class {_format_classes(classes)}"

        return (
            f"{side(self.min_inputs, self.max_inputs, self.allowed_input_classes, 'input')} and "
            f"{side(self.min_outputs, self.max_outputs, self.allowed_output_classes, 'output')}"
        )

    def violations(self, inputs: Sequence[FlowClass], outputs: Sequence[FlowClass]) -> list[str]:
        """One message per violated constraint (count and class, per side)."""
        found = []
        for noun, flows, lo, hi, allowed in (
            ("input", inputs, self.min_inputs, self.max_inputs, self.allowed_input_classes),
            ("output", outputs, self.min_outputs, self.max_outputs, self.allowed_output_classes),
        ):
            n = len(flows)
            if n < lo or (hi is not None and n > hi):
                found.append(f"{n} {noun} flow(s), expected {_format_range(lo, hi)}")
            # a side that admits no flow is already covered by its count check
            if allowed:
                bad = sorted({c.value for c in flows if c not in allowed})
                if bad:
                    found.append(
                        f"{noun} flow class {'/'.join(bad)} not permitted, expected {_format_classes(allowed)}"
                    )
        return found

    def to_line(self) -> str:
        def bound(v):
            return "*" if v is None else str(v)

        line = (
            f"{self.verb} {self.min_inputs} {bound(self.max_inputs)} {self.min_outputs} "
            f"{bound(self.max_outputs)} {_format_classes(self.allowed_input_classes)} "
            f"{_format_classes(self.allowed_output_classes)}"
        )
        return f"{line} # {self.notes}" if self.notes else line


class KnowledgeBase(Mapping[str, FunctionRule]):
    """Read-only verb -> rule mapping; keys are matched case-insensitively."""

    def __init__(self, rules: Iterable[FunctionRule] = ()):
        by_verb: dict[str, FunctionRule] = {}
        for rule in rules:
            key = rule.verb.casefold()
            if key in by_verb:
                raise DuplicateVerbError(f"duplicate verb {rule.verb!r}")
            by_verb[key] = rule
        self._rules = MappingProxyType(by_verb)

    @property
    def rules(self) -> Mapping[str, FunctionRule]:
        return self._rules

    def __getitem__(self, verb: str) -> FunctionRule:
        return self._rules[verb.casefold()]

    def __iter__(self) -> Iterator[str]:
        return iter(self._rules)

    def __len__(self) -> int:
        return len(self._rules)

    def __repr__(self) -> str:
        return f"KnowledgeBase({len(self)} verbs)"


def _parse_bound(text: str, lineno: int, source: str) -> int | None:
    if text == "*":
        return None
    try:
        value = int(text)
    except ValueError:
        raise KBError(f"bad count {text!r}", lineno, source) from None
    if value < 0:
        raise KBError(f"negative count {text!r}", lineno, source)
    return value


def _parse_classes(text: str, lineno: int, source: str) -> frozenset[FlowClass]:
    if text == "-":
        return frozenset()
    try:
        return frozenset(_CLASS_LETTERS[t.strip().upper()] for t in text.split(",") if t.strip())
    except KeyError as exc:
        raise KBError(f"unknown flow class {exc.args[0]!r} (use M, E or -)", lineno, source) from None


def parse_kb(text: str, source: str = "<kb>") -> KnowledgeBase:
    rules: list[FunctionRule] = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body, _, comment = raw.partition("#")
        fields = body.split()
        if not fields:
            continue
        if len(fields) != 7:
            raise KBError(
                f"expected 7 fields 'VERB MIN_IN MAX_IN MIN_OUT MAX_OUT IN_CLASSES OUT_CLASSES', got {len(fields)}",
                lineno,
                source,
            )
        verb = fields[0]
        if verb.casefold() in seen:
            raise DuplicateVerbError(
                f"duplicate verb {verb!r} (first defined on line {seen[verb.casefold()]})", lineno, source
            )
        seen[verb.casefold()] = lineno
        min_in = _parse_bound(fields[1], lineno, source)
        min_out = _parse_bound(fields[3], lineno, source)
        if min_in is None or min_out is None:
            raise KBError("minimum counts cannot be '*'", lineno, source)
        try:
            rule = FunctionRule(
                verb=verb.casefold(),
                min_inputs=min_in,
                max_inputs=_parse_bound(fields[2], lineno, source),
                min_outputs=min_out,
                max_outputs=_parse_bound(fields[4], lineno, source),
                allowed_input_classes=_parse_classes(fields[5], lineno, source),
                allowed_output_classes=_parse_classes(fields[6], lineno, source),
                notes=comment.strip(),
            )
        except ValueError as exc:
            raise KBError(str(exc), lineno, source) from None
        rules.append(rule)
    return KnowledgeBase(rules)


def load_kb(path: Union[str, Path, None] = None) -> KnowledgeBase:
    """Load a KB file; the built-in 18-verb table when ``path`` is None."""
    if path is None:
        text = resources.files("physlint.data").joinpath("function_kb.txt").read_text(encoding="utf-8")
        return parse_kb(text, source="function_kb.txt")
    path = Path(path)
    return parse_kb(path.read_text(encoding="utf-8"), source=str(path))


def lookup(kb: KnowledgeBase, verb: str) -> FunctionRule | None:
    # exact match only: no stemming, no synonyms
    return kb.get(verb)


def extract_verb(action_name: str) -> str:
    tokens = action_name.split()
    return tokens[0].casefold() if tokens else ""
