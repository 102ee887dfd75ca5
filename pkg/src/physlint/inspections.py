"""Physics-based inspections over an :class:`ElementStore`.

Balance laws (I1), incomplete topology (I2) and the knowledge-base checks on
activity diagrams (I3).  Every check is a pure function returning a list of
diagnostics; :func:`run_all` runs them together, applies suppression and
orders the result.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from physlint.kb import KnowledgeBase, extract_verb, lookup
from physlint.model import (
    Direction,
    ElementId,
    ElementKind,
    ElementStore,
    FlowClass,
    FlowTypeRegistry,
)
from physlint.report import Diagnostic, Family

_CONSERVED = (FlowClass.MATERIAL, FlowClass.ENERGY)
_FAMILY_ORDER = {Family.I1: 0, Family.I2: 1, Family.I3: 2}


def _diag(store: ElementStore, check: str, element_id: ElementId, message: str, notes: Iterable[str] = ()) -> Diagnostic:
    return Diagnostic.from_check(
        check, element_id, store.name_of(element_id), store.diagram_of(element_id), message, notes
    )


def _owner_label(store: ElementStore, element_id: ElementId) -> str:
    name = store.name_of(element_id)
    return f"'{name}'" if name else f"({element_id or 'no owner'})"


# ---------------------------------------------------------------------------
# Topology
# ---------------------------------------------------------------------------


class PortRole(str, enum.Enum):
    SOURCE = "SourceOfAssociation"
    DESTINATION = "DestinationOfAssociation"
    UNCONNECTED = "Unconnected"


@dataclass(frozen=True)
class PortClassification:
    port_id: ElementId
    role: PortRole
    notes: tuple[str, ...] = ()


def classify_ports(store: ElementStore) -> dict[ElementId, PortClassification]:
    """Sort every port into source, destination or unconnected.

    A port that is both a source and a destination is recorded as a source.
    """
    sources: set[ElementId] = set()
    destinations: set[ElementId] = set()
    for assoc in store.associations.values():
        sources.add(assoc.source_id)
        destinations.add(assoc.destination_id)
    table = {}
    for pid in store.ports:
        if pid in sources:
            notes = ("also the destination of an association",) if pid in destinations else ()
            table[pid] = PortClassification(pid, PortRole.SOURCE, notes)
        elif pid in destinations:
            table[pid] = PortClassification(pid, PortRole.DESTINATION)
        else:
            table[pid] = PortClassification(pid, PortRole.UNCONNECTED)
    return table


def check_topology(store: ElementStore) -> list[Diagnostic]:
    """Dangling heads/tails on unconnected ports and dangling property nodes."""
    diags = []
    for pid, entry in classify_ports(store).items():
        if entry.role is not PortRole.UNCONNECTED:
            continue
        port = store.ports[pid]
        owner = _owner_label(store, port.owner_id)
        direction = store.signatures[pid].direction
        if direction is Direction.OUTPUT:
            diags.append(
                _diag(store, "IT-DanglingHead", pid,
                      f"output port '{port.name}' of {owner} is not connected: its flow has a dangling head")
            )
        elif direction is Direction.INPUT:
            diags.append(
                _diag(store, "IT-DanglingTail", pid,
                      f"input port '{port.name}' of {owner} is not connected: its flow has a dangling tail")
            )
        else:
            diags.append(
                _diag(store, "IT-UnconnectedPort", pid,
                      f"port '{port.name}' of {owner} has no association and no declared direction")
            )

    for prop_id, prop in store.properties.items():
        if not store.ports_owned_by(prop_id):
            diags.append(
                _diag(store, "IT-DanglingNode", prop_id,
                      f"property '{prop.name}' has no ports and no associations: no flow enters or leaves it")
            )
    return diags


# ---------------------------------------------------------------------------
# Balance laws
# ---------------------------------------------------------------------------


def check_association_flow_integrity(store: ElementStore, registry: FlowTypeRegistry) -> list[Diagnostic]:
    """The specific flow type must be the same at both ends of an association."""
    diags = []
    for aid, assoc in store.associations.items():
        missing = [
            f"{end} {ref!r}" if ref else f"{end} (none)"
            for end, ref in (("source", assoc.source_id), ("destination", assoc.destination_id))
            if ref not in store.ports
        ]
        if missing:
            diags.append(
                _diag(store, "BL-UnresolvedEndpoint", aid,
                      f"association '{assoc.label}' has no port at its {' and '.join(missing)}")
            )
            continue
        src, dst = store.signatures[assoc.source_id], store.signatures[assoc.destination_id]
        src_port, dst_port = store.ports[assoc.source_id], store.ports[assoc.destination_id]
        unknown = [
            f"'{port.name}'" for port, sig in ((src_port, src), (dst_port, dst)) if sig.flow_class is FlowClass.UNKNOWN
        ]
        if unknown:
            diags.append(
                _diag(store, "BL-UnknownFlowType", aid,
                      f"association '{assoc.label}': flow type of port {' and '.join(unknown)} is not in the registry")
            )
        elif src.flow_code.casefold() != dst.flow_code.casefold():
            diags.append(
                _diag(store, "BL-TypeMismatch", aid,
                      f"association '{assoc.label}' carries {src.flow_code} ({src.flow_class.value}) from "
                      f"'{src_port.name}' ({src_port.id}) into '{dst_port.name}' ({dst_port.id}) "
                      f"which expects {dst.flow_code} ({dst.flow_class.value})")
            )
    return diags


def _block_port_signatures(store: ElementStore, block_id: ElementId):
    for pid in store.blocks[block_id].port_ids:
        if pid in store.signatures:
            yield store.signatures[pid]


def check_block_balance(store: ElementStore, registry: FlowTypeRegistry) -> list[Diagnostic]:
    """Per block, declared inputs and outputs of each conserved class must match in number."""
    diags = []
    for bid, block in store.blocks.items():
        tally: Counter = Counter()
        for sig in _block_port_signatures(store, bid):
            if sig.flow_class in _CONSERVED and sig.direction is not Direction.UNDECLARED:
                tally[sig.flow_class, sig.direction] += 1
        for flow_class in _CONSERVED:
            n_in, n_out = tally[flow_class, Direction.INPUT], tally[flow_class, Direction.OUTPUT]
            if n_in == n_out:
                continue
            noun = flow_class.value.lower()
            message = f"block '{block.name}' has {n_in} {noun} input(s) but {n_out} {noun} output(s)"
            notes = ()
            if n_in == 0:
                message += ": orphan flow (output not balanced by any input)"
                notes = ("orphan flow",)
            elif n_out == 0:
                message += ": barren flow (input not balanced by any output)"
                notes = ("barren flow",)
            check = "BL-MaterialImbalance" if flow_class is FlowClass.MATERIAL else "BL-EnergyImbalance"
            diags.append(_diag(store, check, bid, message, notes))
    return diags


def check_state_change(store: ElementStore, registry: FlowTypeRegistry) -> list[Diagnostic]:
    """Material changing state across a block with no energy crossing its boundary."""
    diags = []
    for bid, block in store.blocks.items():
        sigs = list(_block_port_signatures(store, bid))
        if any(s.flow_class is FlowClass.ENERGY for s in sigs):
            continue
        material_in = Counter(s.flow_code.casefold() for s in sigs
                              if s.flow_class is FlowClass.MATERIAL and s.direction is Direction.INPUT)
        material_out = Counter(s.flow_code.casefold() for s in sigs
                               if s.flow_class is FlowClass.MATERIAL and s.direction is Direction.OUTPUT)
        if material_in != material_out:
            diags.append(
                _diag(store, "BL-StateChangeWithoutEnergy", bid,
                      f"block '{block.name}' turns material {_codes(store, bid, Direction.INPUT)} into "
                      f"{_codes(store, bid, Direction.OUTPUT)} with no energy added or removed")
            )
    return diags


def _codes(store: ElementStore, block_id: ElementId, direction: Direction) -> str:
    codes = sorted(
        s.flow_code for s in _block_port_signatures(store, block_id)
        if s.flow_class is FlowClass.MATERIAL and s.direction is direction
    )
    return "{" + ", ".join(codes) + "}"


# ---------------------------------------------------------------------------
# Activity diagrams and the knowledge base
# ---------------------------------------------------------------------------


def check_activity_dangling(store: ElementStore) -> list[Diagnostic]:
    diags = []
    for did, diagram in store.activity_diagrams.items():
        if not any(p in store.activity_parameters for p in diagram.parameter_ids):
            diags.append(
                _diag(store, "DN-DanglingActivity", did,
                      f"activity '{diagram.name}' has no activity parameters: no flow enters or leaves it")
            )
    return diags


def _action_findings(store: ElementStore, kb: KnowledgeBase, registry: FlowTypeRegistry) -> dict[ElementId, list[Diagnostic]]:
    """KB findings per action, for every action of every activity diagram."""
    findings: dict[ElementId, list[Diagnostic]] = {}
    for diagram in store.activity_diagrams.values():
        for aid in diagram.action_ids:
            action = store.actions.get(aid)
            if action is None or aid in findings:
                continue
            verb = extract_verb(action.name)
            rule = lookup(kb, verb)
            if rule is None:
                findings[aid] = [
                    _diag(store, "IB-UnknownFunction", aid,
                          f"action '{action.name}': verb '{verb}' is not in the functional knowledge base")
                ]
                continue
            inputs, outputs = [], []
            for pid in action.pin_ids:
                pin = store.action_pins.get(pid)
                if pin is None:
                    continue
                flow_class = registry.classify(pin.flow_type)
                if pin.direction is Direction.INPUT:
                    inputs.append(flow_class)
                elif pin.direction is Direction.OUTPUT:
                    outputs.append(flow_class)
            findings[aid] = [
                _diag(store, "IB-InferredBalance", aid,
                      f"action '{action.name}': {problem}; '{rule.verb}' expects {rule.describe()}")
                for problem in rule.violations(inputs, outputs)
            ]
    return findings


def check_inferred_balance(store: ElementStore, kb: KnowledgeBase, registry: FlowTypeRegistry) -> list[Diagnostic]:
    return [d for found in _action_findings(store, kb, registry).values() for d in found]


def validated_owners(store: ElementStore, findings: dict[ElementId, list[Diagnostic]]) -> set[ElementId]:
    """Owners whose activity diagrams contain actions, all of which passed the KB."""
    by_owner: dict[ElementId, list[bool]] = {}
    for diagram in store.activity_diagrams.values():
        results = by_owner.setdefault(diagram.owner_id, [])
        for aid in diagram.action_ids:
            if aid in findings:
                results.append(not findings[aid])
    return {owner for owner, results in by_owner.items() if owner and results and all(results)}


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def is_structural_only(store: ElementStore, kb: KnowledgeBase | None, forced: bool = False) -> bool:
    return forced or kb is None or not store.activity_diagrams


def sort_key(store: ElementStore):
    def key(d: Diagnostic):
        return (_FAMILY_ORDER[d.family], store.position(d.element_id), d.element_id, d.check, d.message)

    return key


def run_all(
    store: ElementStore,
    kb: KnowledgeBase | None,
    registry: FlowTypeRegistry,
    *,
    structural_only: bool = False,
    include_suppressed: bool = False,
) -> list[Diagnostic]:
    """Run every inspection and return diagnostics in a deterministic order.

    Balance-law findings on a block are suppressed when that block owns
    activity diagrams whose actions all satisfy the knowledge base.
    Suppressed diagnostics are dropped unless ``include_suppressed`` is set,
    in which case they are returned flagged with a note.
    """
    diags: list[Diagnostic] = []
    diags += check_topology(store)
    diags += check_association_flow_integrity(store, registry)
    diags += check_block_balance(store, registry)
    diags += check_state_change(store, registry)

    if not is_structural_only(store, kb, structural_only):
        findings = _action_findings(store, kb, registry)
        diags += check_activity_dangling(store)
        diags += [d for found in findings.values() for d in found]
        passed = validated_owners(store, findings)
        kept = []
        for d in diags:
            if d.family is Family.I1 and store.kind_of(d.element_id) is ElementKind.BLOCK and d.element_id in passed:
                if include_suppressed:
                    kept.append(_suppress(store, d))
            else:
                kept.append(d)
        diags = kept

    diags.sort(key=sort_key(store))
    return diags


def _suppress(store: ElementStore, diag: Diagnostic) -> Diagnostic:
    acts = [a.name for a in store.activity_diagrams.values() if a.owner_id == diag.element_id]
    note = f"suppressed: every action in activity {', '.join(repr(a) for a in acts)} satisfies the knowledge base"
    return Diagnostic(
        diag.family, diag.sub_code, diag.check, diag.element_id, diag.element_name,
        diag.diagram, diag.message, True, diag.notes + (note,),
    )
