"""Physics-based static analysis for SysML models."""

from physlint.inspections import (
    check_activity_dangling,
    check_association_flow_integrity,
    check_block_balance,
    check_inferred_balance,
    check_state_change,
    check_topology,
    classify_ports,
    run_all,
)
from physlint.kb import FunctionRule, KnowledgeBase, extract_verb, load_kb, lookup
from physlint.model import (
    Direction,
    DiagramKind,
    ElementStore,
    FlowClass,
    FlowTypeRegistry,
    PortSignature,
    classify_flow,
    load_registry,
    parse_port_signature,
)
from physlint.report import Diagnostic, Family, RunSummary, SubCode, render_json, render_text, summarize
from physlint.xmi import CanonicalDocument, MalformedXMLError, ModelInputError, condense, extract_knowledge, ingest

__version__ = "0.1.0"

__all__ = [
    "CanonicalDocument",
    "Diagnostic",
    "DiagramKind",
    "Direction",
    "ElementStore",
    "Family",
    "FlowClass",
    "FlowTypeRegistry",
    "FunctionRule",
    "KnowledgeBase",
    "MalformedXMLError",
    "ModelInputError",
    "PortSignature",
    "RunSummary",
    "SubCode",
    "check_activity_dangling",
    "check_association_flow_integrity",
    "check_block_balance",
    "check_inferred_balance",
    "check_state_change",
    "check_topology",
    "classify_flow",
    "classify_ports",
    "condense",
    "extract_knowledge",
    "extract_verb",
    "ingest",
    "load_kb",
    "load_registry",
    "lookup",
    "parse_port_signature",
    "render_json",
    "render_text",
    "run_all",
    "summarize",
]
