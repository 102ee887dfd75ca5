"""Condense SysML XMI exports into canonical XML and extract an ElementStore.

Two input flavours are accepted and told apart by the root tag:

* canonical documents, rooted at ``<model>`` (see ``docs/canonical-format.md``);
* raw XMI 2.x exports in the Enterprise Architect style, rooted at ``xmi:XMI``.

Both are reduced to the same :class:`CanonicalDocument`: a flat, ordered list
of the ten retained element kinds with only their whitelisted attributes.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Union

from physlint.model import (
    Action,
    ActionPin,
    ActivityDiagram,
    ActivityParameter,
    Association,
    Block,
    Direction,
    Element,
    ElementKind,
    ElementStore,
    FlowTypeRegistry,
    InternalDiagram,
    Port,
    Property,
    Transition,
    parse_direction,
    parse_port_signature,
)

log = logging.getLogger(__name__)

ID = "xmi.id"

# Attribute whitelist per canonical tag, in serialization order.
CANONICAL_ATTRIBUTES: dict[str, tuple[str, ...]] = {
    "block": ("name", ID, "ports"),
    "property": ("name", ID, "owner"),
    "port": ("name", ID, "owner", "reusesProperty"),
    "association": ("name", ID, "sourceName", "destinationName", "source", "destination"),
    "action": ("name", ID, "owner", "pins"),
    "actionPin": ("name", ID, "flowType", "owner", "direction"),
    "activityParameter": ("name", ID, "flowType", "owner", "direction"),
    "transition": (
        "name",
        ID,
        "sourceName",
        "targetName",
        "source",
        "target",
        "sourceElementType",
        "targetElementType",
    ),
    "activityDiagram": ("name", ID, "owner", "actions", "parameters"),
    "internalDiagram": ("name", ID, "owner", "elements"),
}

# Kinds whose owner may be implied by nesting in hand-written canonical files.
_NESTABLE = {"property", "port", "action", "actionPin", "activityParameter"}


class ModelInputError(Exception):
    """The model document cannot be read as a SysML model."""


class MalformedXMLError(ModelInputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        where = source or "<document>"
        if line is not None:
            where += f":{line}:{column}"
        super().__init__(f"{where}: malformed XML: {message}")


class UnsupportedDocumentError(ModelInputError):
    pass


@dataclass(frozen=True)
class CanonicalElement:
    tag: str
    attributes: tuple[tuple[str, str], ...]

    def get(self, key: str, default: str = "") -> str:
        for k, v in self.attributes:
            if k == key:
                return v
        return default

    def has(self, key: str) -> bool:
        return any(k == key for k, _ in self.attributes)

    @property
    def id(self) -> str:
        return self.get(ID)


@dataclass(frozen=True)
class CanonicalDocument:
    """Flat canonical model document.  Equality ignores warnings."""

    name: str
    elements: tuple[CanonicalElement, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def of_kind(self, tag: str) -> Iterator[CanonicalElement]:
        return (e for e in self.elements if e.tag == tag)

    def counts(self) -> dict[str, int]:
        counts = {tag: 0 for tag in CANONICAL_ATTRIBUTES}
        for element in self.elements:
            counts[element.tag] += 1
        return counts

    def to_xml(self) -> str:
        root = ET.Element("model", {"name": self.name} if self.name else {})
        for element in self.elements:
            ET.SubElement(root, element.tag, dict(element.attributes))
        ET.indent(root)
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _parse_xml(text: Union[str, bytes], source: str = "") -> ET.Element:
    try:
        return ET.fromstring(text)
    except ET.ParseError as exc:
        line, column = getattr(exc, "position", (None, None))
        raise MalformedXMLError(str(exc), line, column, source) from None


def _local(name: str) -> str:
    return name.rsplit("}", 1)[-1]


def _namespace(name: str) -> str:
    return name[1:].split("}", 1)[0] if name.startswith("{") else ""


def condense(raw_xml: Union[str, bytes, CanonicalDocument], source: str = "") -> CanonicalDocument:
    """Reduce a model document to canonical form.

    Accepts document text or an existing :class:`CanonicalDocument` (which is
    re-serialized and condensed again, so the operation is idempotent).
    """
    if isinstance(raw_xml, CanonicalDocument):
        raw_xml = raw_xml.to_xml()
    root = _parse_xml(raw_xml, source)
    tag = _local(root.tag)
    if tag == "model" and not _namespace(root.tag):
        return _condense_canonical(root)
    if tag in ("XMI", "Model"):
        return _condense_xmi(root)
    raise UnsupportedDocumentError(f"{source or '<document>'}: unrecognised root element <{tag}>")


class _Collector:
    """Accumulates canonical elements, dropping those without a usable id."""

    def __init__(self) -> None:
        self.elements: list[CanonicalElement] = []
        self.warnings: list[str] = []
        self._ids: set[str] = set()

    def warn(self, message: str) -> None:
        log.debug(message)
        self.warnings.append(message)

    def add(self, tag: str, attrs: dict[str, str]) -> bool:
        element_id = (attrs.get(ID) or "").strip()
        if not element_id:
            self.warn(f"<{tag} name={attrs.get('name', '')!r}> has no xmi.id; skipped")
            return False
        if element_id in self._ids:
            self.warn(f"duplicate xmi.id {element_id!r} on <{tag}>; skipped")
            return False
        self._ids.add(element_id)
        attrs[ID] = element_id
        kept = tuple((k, attrs[k]) for k in CANONICAL_ATTRIBUTES[tag] if attrs.get(k) is not None)
        self.elements.append(CanonicalElement(tag, kept))
        return True


def _condense_canonical(root: ET.Element) -> CanonicalDocument:
    out = _Collector()

    def walk(node: ET.Element, parent_id: str) -> None:
        for child in node:
            tag = child.tag if isinstance(child.tag, str) else ""
            if tag in CANONICAL_ATTRIBUTES:
                attrs = dict(child.attrib)
                if tag in _NESTABLE and "owner" not in attrs and parent_id:
                    attrs["owner"] = parent_id
                added = out.add(tag, attrs)
                walk(child, attrs.get(ID, "") if added else parent_id)
            else:
                walk(child, parent_id)

    walk(root, "")
    return CanonicalDocument(root.get("name", ""), tuple(out.elements), tuple(out.warnings))


# ---------------------------------------------------------------------------
# Raw XMI (Enterprise Architect flavour)
# ---------------------------------------------------------------------------

_ACTION_TYPES = {
    "Action",
    "OpaqueAction",
    "CallBehaviorAction",
    "CallOperationAction",
    "SendSignalAction",
    "AcceptEventAction",
}
_PIN_TYPES = {"InputPin": Direction.INPUT, "ValuePin": Direction.INPUT, "ActionInputPin": Direction.INPUT, "OutputPin": Direction.OUTPUT}
_EDGE_TYPES = {"ControlFlow", "ObjectFlow"}
_EA_ASSOCIATION_TYPES = {"Association", "Connector", "InformationFlow", "Assembly", "Delegate"}
_IBD_DIAGRAM_TYPES = {"CompositeStructure", "InternalBlock"}


def _xmi_attr(node: ET.Element, name: str) -> str:
    """Value of ``xmi:<name>`` whatever namespace the exporter used."""
    for key, value in node.attrib.items():
        if key == f"xmi.{name}" or (key.startswith("{") and _local(key) == name and "xmi" in _namespace(key).lower()):
            return value
    return ""


def _uml_type(node: ET.Element) -> str:
    return _xmi_attr(node, "type").split(":")[-1]


class _XmiReader:
    def __init__(self, root: ET.Element):
        self.root = root
        self.out = _Collector()
        self.kind_of: dict[str, str] = {}
        self.name_of: dict[str, str] = {}
        self.owned: dict[str, list[str]] = {}
        self.pending: list[tuple[str, dict[str, str]]] = []
        self.by_id: dict[str, ET.Element] = {}
        for node in root.iter():
            node_id = _xmi_attr(node, "id")
            if node_id:
                self.by_id.setdefault(node_id, node)
        self.extension = next((n for n in root if _local(n.tag) == "Extension"), None)
        self.block_ids = self._stereotyped_blocks()
        self.parameter_direction: dict[str, Direction] = {}

    def _stereotyped_blocks(self) -> set[str] | None:
        bases = {
            v
            for node in self.root.iter()
            if _local(node.tag) == "Block"
            for k, v in node.attrib.items()
            if _local(k) == "base_Class"
        }
        return bases or None

    def _emit(self, tag: str, attrs: dict[str, str]) -> None:
        element_id = attrs.get(ID, "")
        if element_id and element_id not in self.kind_of:
            self.kind_of[element_id] = tag
            self.name_of[element_id] = attrs.get("name", "")
        self.pending.append((tag, attrs))

    def _own(self, owner: str, child: str) -> None:
        if owner and child:
            self.owned.setdefault(owner, []).append(child)

    def _flow_type(self, node: ET.Element) -> str:
        explicit = node.get("flowType")
        if explicit:
            return explicit
        type_ref = node.get("type") or ""
        typed = self.by_id.get(type_ref)
        if typed is not None and typed.get("name"):
            return typed.get("name", "")
        return parse_port_signature(node.get("name", ""), FlowTypeRegistry()).flow_code

    def read(self) -> CanonicalDocument:
        model = self.root if _local(self.root.tag) == "Model" else next(
            (n for n in self.root.iter() if _local(n.tag) == "Model"), None
        )
        if model is not None:
            self._walk(model, owner="", activity="")
        self._connectors()
        self._diagrams()
        for tag, attrs in self.pending:
            element_id = attrs.get(ID, "")
            list_attr = {"block": "ports", "action": "pins", "activityDiagram": "actions"}.get(tag)
            if list_attr and element_id in self.owned:
                children = [c for c in self.owned[element_id] if self._list_kind(tag, c)]
                attrs[list_attr] = " ".join(children)
            self.out.add(tag, attrs)
        name = model.get("name", "") if model is not None else ""
        return CanonicalDocument(name, tuple(self.out.elements), tuple(self.out.warnings))

    def _list_kind(self, tag: str, child: str) -> bool:
        wanted = {"block": "port", "action": "actionPin", "activityDiagram": "action"}[tag]
        return self.kind_of.get(child) == wanted

    def _walk(self, node: ET.Element, owner: str, activity: str) -> None:
        for child in node:
            if not isinstance(child.tag, str):
                continue
            utype = _uml_type(child)
            cid = _xmi_attr(child, "id")
            name = child.get("name", "")
            next_owner, next_activity = owner, activity
            if utype == "Class" and (self.block_ids is None or cid in self.block_ids):
                self._emit("block", {"name": name, ID: cid})
                next_owner = cid
            elif utype == "Port":
                attrs = {"name": name, ID: cid, "owner": owner}
                reuses = child.get("reusesProperty")
                if reuses:
                    attrs["reusesProperty"] = reuses
                self._emit("port", attrs)
                self._own(owner, cid)
            elif utype == "Property" and not child.get("association") and owner:
                self._emit("property", {"name": name, ID: cid, "owner": owner})
                next_owner = cid
            elif utype == "Activity":
                self._emit("activityDiagram", {"name": name, ID: cid, "owner": owner})
                next_activity = cid
            elif utype in _ACTION_TYPES:
                self._emit("action", {"name": name, ID: cid, "owner": activity})
                self._own(activity, cid)
                self._pins(child, cid)
                continue
            elif utype == "Parameter" and activity:
                self.parameter_direction[cid] = parse_direction(child.get("direction", ""))
            elif utype == "ActivityParameterNode":
                direction = self.parameter_direction.get(child.get("parameter", ""), Direction.UNDECLARED)
                if direction is Direction.UNDECLARED:
                    direction = parse_port_signature(name, FlowTypeRegistry()).direction
                attrs = {"name": name, ID: cid, "owner": activity, "flowType": self._flow_type(child)}
                if direction is not Direction.UNDECLARED:
                    attrs["direction"] = "in" if direction is Direction.INPUT else "out"
                self._emit("activityParameter", attrs)
            elif utype in _EDGE_TYPES:
                self._emit(
                    "transition",
                    {"name": name, ID: cid, "source": child.get("source", ""), "target": child.get("target", "")},
                )
            elif utype == "Connector":
                ends = [e for e in child if _local(e.tag) == "end"]
                roles = [e.get("role", "") for e in ends]
                if len(roles) == 2:
                    self._emit(
                        "association",
                        {"name": name, ID: cid, "source": roles[0], "destination": roles[1]},
                    )
            self._walk(child, next_owner, next_activity)

    def _pins(self, action: ET.Element, action_id: str) -> None:
        for pin in action:
            direction = _PIN_TYPES.get(_uml_type(pin))
            if direction is None:
                if _local(pin.tag) in ("input", "argument"):
                    direction = Direction.INPUT
                elif _local(pin.tag) in ("output", "result"):
                    direction = Direction.OUTPUT
                else:
                    continue
            pid = _xmi_attr(pin, "id")
            self._emit(
                "actionPin",
                {
                    "name": pin.get("name", ""),
                    ID: pid,
                    "flowType": self._flow_type(pin),
                    "owner": action_id,
                    "direction": "in" if direction is Direction.INPUT else "out",
                },
            )
            self._own(action_id, pid)

    def _extension_children(self, group: str) -> Iterable[ET.Element]:
        if self.extension is None:
            return ()
        container = next((n for n in self.extension if _local(n.tag) == group), None)
        return list(container) if container is not None else ()

    def _connectors(self) -> None:
        # EA keeps the authoritative source/target of every connector here.
        seen = {attrs.get(ID) for tag, attrs in self.pending if tag == "association"}
        directed: dict[str, tuple[str, str]] = {}
        for conn in self._extension_children("connectors"):
            cid = _xmi_attr(conn, "idref")
            src = next((n for n in conn if _local(n.tag) == "source"), None)
            dst = next((n for n in conn if _local(n.tag) == "target"), None)
            props = next((n for n in conn if _local(n.tag) == "properties"), None)
            if not cid or src is None or dst is None:
                continue
            ends = (_xmi_attr(src, "idref"), _xmi_attr(dst, "idref"))
            ea_type = props.get("ea_type", "") if props is not None else ""
            if cid in seen:
                directed[cid] = ends
            elif ea_type in _EA_ASSOCIATION_TYPES and all(self.kind_of.get(e) == "port" for e in ends):
                name = props.get("name", "") if props is not None else ""
                self._emit("association", {"name": name or conn.get("name", ""), ID: cid, "source": ends[0], "destination": ends[1]})
        for tag, attrs in self.pending:
            if tag == "association":
                if attrs[ID] in directed:
                    attrs["source"], attrs["destination"] = directed[attrs[ID]]
                attrs["sourceName"] = self.name_of.get(attrs["source"], "")
                attrs["destinationName"] = self.name_of.get(attrs["destination"], "")
            elif tag == "transition":
                for end in ("source", "target"):
                    attrs[f"{end}Name"] = self.name_of.get(attrs[end], "")
                    attrs[f"{end}ElementType"] = self.kind_of.get(attrs[end], "")

    def _diagrams(self) -> None:
        for diagram in self._extension_children("diagrams"):
            props = next((n for n in diagram if _local(n.tag) == "properties"), None)
            model = next((n for n in diagram if _local(n.tag) == "model"), None)
            if props is None or props.get("type") not in _IBD_DIAGRAM_TYPES:
                continue
            owner = ""
            if model is not None:
                owner = model.get("parent") or model.get("owner") or ""
            holder = next((n for n in diagram if _local(n.tag) == "elements"), None)
            subjects = []
            if holder is not None:
                subjects = [e.get("subject", "") for e in holder if e.get("subject", "") in self.kind_of]
            self._emit(
                "internalDiagram",
                {"name": props.get("name", ""), ID: _xmi_attr(diagram, "id"), "owner": owner, "elements": " ".join(subjects)},
            )


def _condense_xmi(root: ET.Element) -> CanonicalDocument:
    return _XmiReader(root).read()


# ---------------------------------------------------------------------------
# Extraction
# ---------------------------------------------------------------------------


def _ids(text: str) -> tuple[str, ...]:
    return tuple(text.split())


def _direction(element: CanonicalElement, registry: FlowTypeRegistry, warnings: list[str]) -> Direction:
    if element.has("direction"):
        direction = parse_direction(element.get("direction"))
    else:
        direction = parse_port_signature(element.get("name"), registry).direction
    if direction is Direction.UNDECLARED:
        warnings.append(f"{element.tag} {element.id!r} has no input/output direction")
    return direction


def extract_knowledge(doc: CanonicalDocument, registry: FlowTypeRegistry) -> ElementStore:
    """Turn a canonical document into an :class:`ElementStore`.

    Id lists that a canonical element omits (a block's ``ports``, an
    action's ``pins``, a diagram's ``actions``/``parameters``) are derived
    from the owner attributes of the listed kind, in document order.
    """
    warnings = list(doc.warnings)
    owned: dict[tuple[str, str], list[str]] = {}
    for element in doc.elements:
        owner = element.get("owner")
        if owner:
            owned.setdefault((element.tag, owner), []).append(element.id)

    def id_list(element: CanonicalElement, attr: str, child_tag: str) -> tuple[str, ...]:
        if element.has(attr):
            return _ids(element.get(attr))
        return tuple(owned.get((child_tag, element.id), ()))

    elements: list[Element] = []
    for e in doc.elements:
        name, eid = e.get("name"), e.id
        if e.tag == "block":
            elements.append(Block(name, eid, id_list(e, "ports", "port")))
        elif e.tag == "property":
            elements.append(Property(name, eid, e.get("owner")))
        elif e.tag == "port":
            elements.append(Port(name, eid, e.get("owner"), e.get("reusesProperty") or None))
        elif e.tag == "association":
            elements.append(
                Association(
                    name,
                    eid,
                    e.get("sourceName"),
                    e.get("destinationName"),
                    e.get("source"),
                    e.get("destination"),
                )
            )
        elif e.tag == "action":
            elements.append(Action(name, eid, e.get("owner"), id_list(e, "pins", "actionPin")))
        elif e.tag == "actionPin":
            elements.append(
                ActionPin(name, eid, e.get("flowType"), e.get("owner"), _direction(e, registry, warnings))
            )
        elif e.tag == "activityParameter":
            elements.append(
                ActivityParameter(name, eid, e.get("flowType"), e.get("owner"), _direction(e, registry, warnings))
            )
        elif e.tag == "transition":
            for end in ("sourceElementType", "targetElementType"):
                value = e.get(end)
                if value and value not in CANONICAL_ATTRIBUTES:
                    warnings.append(f"transition {eid!r}: {end} {value!r} is not a known element kind")
            elements.append(
                Transition(
                    name,
                    eid,
                    e.get("source"),
                    e.get("target"),
                    e.get("sourceElementType"),
                    e.get("targetElementType"),
                    e.get("sourceName"),
                    e.get("targetName"),
                )
            )
        elif e.tag == "activityDiagram":
            elements.append(
                ActivityDiagram(
                    name,
                    eid,
                    e.get("owner"),
                    id_list(e, "actions", "action"),
                    id_list(e, "parameters", "activityParameter"),
                )
            )
        elif e.tag == "internalDiagram":
            elements.append(InternalDiagram(name, eid, e.get("owner"), _ids(e.get("elements"))))
    return ElementStore.build(elements, registry, name=doc.name, warnings=warnings)


def ingest(path: Union[str, Path], registry: FlowTypeRegistry) -> ElementStore:
    """Read, condense and extract a model file.  Raises OSError or ModelInputError."""
    path = Path(path)
    data = path.read_bytes()
    doc = condense(data, source=str(path))
    if not doc.name:
        doc = CanonicalDocument(path.stem, doc.elements, doc.warnings)
    return extract_knowledge(doc, registry)


__all__ = [
    "CANONICAL_ATTRIBUTES",
    "CanonicalDocument",
    "CanonicalElement",
    "MalformedXMLError",
    "ModelInputError",
    "UnsupportedDocumentError",
    "condense",
    "extract_knowledge",
    "ingest",
]
