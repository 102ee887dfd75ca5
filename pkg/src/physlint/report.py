"""Diagnostics, run summaries and their text/JSON renderings."""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from physlint.model import DiagramKind, ElementId


class Family(str, enum.Enum):
    I1 = "I1"  # balance law
    I2 = "I2"  # incomplete topology
    I3 = "I3"  # knowledge-base inspections on activity diagrams


class SubCode(str, enum.Enum):
    BALANCE_LAW_I = "BalanceLawI"
    BALANCE_LAW_II = "BalanceLawII"
    STATE_CHANGE = "StateChange"
    UNKNOWN_FLOW_TYPE = "UnknownFlowType"
    UNRESOLVED_ENDPOINT = "UnresolvedEndpoint"
    INCOMPLETE_TOPOLOGY_I = "IncompleteTopologyI"
    INCOMPLETE_TOPOLOGY_II = "IncompleteTopologyII"
    DANGLING_NODE = "DanglingNode"
    UNKNOWN_FUNCTION = "UnknownFunction"
    INFERRED_BALANCE = "InferredBalance"

    @property
    def family(self) -> Family:
        return _FAMILY_OF[self]

    @property
    def label(self) -> str:
        return _LABELS[self]


_FAMILY_OF = {
    SubCode.BALANCE_LAW_I: Family.I1,
    SubCode.BALANCE_LAW_II: Family.I1,
    SubCode.STATE_CHANGE: Family.I1,
    SubCode.UNKNOWN_FLOW_TYPE: Family.I1,
    SubCode.UNRESOLVED_ENDPOINT: Family.I1,
    SubCode.INCOMPLETE_TOPOLOGY_I: Family.I2,
    SubCode.INCOMPLETE_TOPOLOGY_II: Family.I2,
    SubCode.DANGLING_NODE: Family.I3,
    SubCode.UNKNOWN_FUNCTION: Family.I3,
    SubCode.INFERRED_BALANCE: Family.I3,
}

_LABELS = {
    SubCode.BALANCE_LAW_I: "Balance Law I",
    SubCode.BALANCE_LAW_II: "Balance Law II",
    SubCode.STATE_CHANGE: "State Change",
    SubCode.UNKNOWN_FLOW_TYPE: "Unknown Flow Type",
    SubCode.UNRESOLVED_ENDPOINT: "Unresolved Endpoint",
    SubCode.INCOMPLETE_TOPOLOGY_I: "Incomplete Topology I",
    SubCode.INCOMPLETE_TOPOLOGY_II: "Incomplete Topology II",
    SubCode.DANGLING_NODE: "Dangling Node",
    SubCode.UNKNOWN_FUNCTION: "Unknown Function",
    SubCode.INFERRED_BALANCE: "Inferred Balance",
}

# Check code -> reported sub-code.
CHECKS: Mapping[str, SubCode] = {
    "BL-TypeMismatch": SubCode.BALANCE_LAW_I,
    "BL-MaterialImbalance": SubCode.BALANCE_LAW_II,
    "BL-EnergyImbalance": SubCode.BALANCE_LAW_II,
    "BL-StateChangeWithoutEnergy": SubCode.STATE_CHANGE,
    "BL-UnknownFlowType": SubCode.UNKNOWN_FLOW_TYPE,
    "BL-UnresolvedEndpoint": SubCode.UNRESOLVED_ENDPOINT,
    "IT-DanglingNode": SubCode.INCOMPLETE_TOPOLOGY_I,
    "IT-DanglingHead": SubCode.INCOMPLETE_TOPOLOGY_II,
    "IT-DanglingTail": SubCode.INCOMPLETE_TOPOLOGY_II,
    "IT-UnconnectedPort": SubCode.INCOMPLETE_TOPOLOGY_II,
    "DN-DanglingActivity": SubCode.DANGLING_NODE,
    "IB-UnknownFunction": SubCode.UNKNOWN_FUNCTION,
    "IB-InferredBalance": SubCode.INFERRED_BALANCE,
}


@dataclass(frozen=True)
class Diagnostic:
    family: Family
    sub_code: SubCode
    check: str
    element_id: ElementId
    element_name: str
    diagram: DiagramKind
    message: str
    suppressed: bool = False
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.sub_code.family is not self.family:
            raise ValueError(f"{self.sub_code.value} does not belong to family {self.family.value}")
        if self.check in CHECKS and CHECKS[self.check] is not self.sub_code:
            raise ValueError(f"check {self.check} reports {CHECKS[self.check].value}, not {self.sub_code.value}")

    @classmethod
    def from_check(
        cls,
        check: str,
        element_id: ElementId,
        element_name: str,
        diagram: DiagramKind,
        message: str,
        notes: Iterable[str] = (),
    ) -> "Diagnostic":
        sub_code = CHECKS[check]
        return cls(sub_code.family, sub_code, check, element_id, element_name, diagram, message, False, tuple(notes))

    @property
    def label(self) -> str:
        """Table-style label such as ``I1-Balance Law II``."""
        return f"{self.family.value}-{self.sub_code.label}"

    def to_dict(self) -> dict:
        return {
            "family": self.family.value,
            "sub_code": self.sub_code.value,
            "label": self.label,
            "check": self.check,
            "element_id": self.element_id,
            "element_name": self.element_name,
            "diagram": self.diagram.value,
            "message": self.message,
            "suppressed": self.suppressed,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class RunSummary:
    model_name: str
    counts: Mapping[SubCode, int]
    total: int
    structural_only: bool = False
    suppressed: int = 0
    diagrams: Mapping[SubCode, tuple[DiagramKind, ...]] = field(default_factory=dict)


def summarize(diags: Sequence[Diagnostic], model_name: str = "", structural_only: bool = False) -> RunSummary:
    """Count active (unsuppressed) diagnostics per sub-code, in sub-code order."""
    active = [d for d in diags if not d.suppressed]
    tally = Counter(d.sub_code for d in active)
    counts = {code: tally[code] for code in SubCode if tally[code]}
    diagrams = {
        code: tuple(k for k in DiagramKind if any(d.sub_code is code and d.diagram is k for d in active))
        for code in counts
    }
    return RunSummary(
        model_name=model_name,
        counts=counts,
        total=len(active),
        structural_only=structural_only,
        suppressed=len(diags) - len(active),
        diagrams=diagrams,
    )


def format_line(diag: Diagnostic) -> str:
    line = f"[{diag.family.value}-{diag.sub_code.value}] {diag.diagram.value}/{diag.element_name} ({diag.element_id}): {diag.message}"
    if diag.suppressed:
        line += " [suppressed]"
    return line


def summary_line(summary: RunSummary) -> str:
    """e.g. ``5 I1-Balance Law II, 1 I2-Incomplete Topology II``."""
    return ", ".join(f"{n} {code.family.value}-{code.label}" for code, n in summary.counts.items())


def render_text(diags: Sequence[Diagnostic], summary: RunSummary, verbose: bool = False) -> str:
    lines = []
    for diag in diags:
        if diag.suppressed and not verbose:
            continue
        lines.append(format_line(diag))
        if verbose:
            lines.extend(f"    note: {note}" for note in diag.notes)

    if lines:
        lines.append("")
    title = f"Model: {summary.model_name}" if summary.model_name else "Model"
    if summary.structural_only:
        title += " (structural analysis only)"
    lines.append(title)
    if summary.counts:
        rows = [("Number of Errors", "Type of Error", "Error Found in Diagram")]
        for code, n in summary.counts.items():
            where = ", ".join(k.value for k in summary.diagrams.get(code, ()))
            rows.append((str(n), f"{code.family.value}-{code.label}", where))
        widths = [max(len(r[i]) for r in rows) for i in range(2)]
        for row in rows:
            lines.append(f"  {row[0]:<{widths[0]}}  {row[1]:<{widths[1]}}  {row[2]}".rstrip())
        lines.append(f"Summary: {summary_line(summary)}")
    total = f"{summary.total} error" + ("" if summary.total == 1 else "s")
    if summary.suppressed:
        total += f" ({summary.suppressed} suppressed)"
    lines.append(total)
    return "\n".join(lines) + "\n"


def render_json(diags: Sequence[Diagnostic], summary: RunSummary) -> str:
    """Stable JSON report.  Key order is fixed; no trailing newline."""
    payload = {
        "model": summary.model_name,
        "structural_only": summary.structural_only,
        "total": summary.total,
        "suppressed": summary.suppressed,
        "counts": {code.value: n for code, n in summary.counts.items()},
        "diagnostics": [d.to_dict() for d in diags],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False)
