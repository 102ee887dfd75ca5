"""In-memory model of a SysML system: elements, flow types and port names.

Everything here is immutable once built.  An :class:`ElementStore` is the
single object the inspections consume; it is produced by
:func:`physlint.xmi.extract_knowledge` (or :meth:`ElementStore.build` when
elements are constructed directly).
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import ClassVar, Iterable, Iterator, Mapping, Union

log = logging.getLogger(__name__)

ElementId = str


class FlowClass(str, enum.Enum):
    MATERIAL = "Material"
    ENERGY = "Energy"
    UNKNOWN = "Unknown"


class Direction(str, enum.Enum):
    INPUT = "Input"
    OUTPUT = "Output"
    UNDECLARED = "Undeclared"


class DiagramKind(str, enum.Enum):
    BDD = "BDD"
    IBD = "IBD"
    ACT = "ACT"


class ElementKind(str, enum.Enum):
    """Element kinds, valued by their canonical XML tag."""

    BLOCK = "block"
    PROPERTY = "property"
    PORT = "port"
    ASSOCIATION = "association"
    ACTION = "action"
    ACTION_PIN = "actionPin"
    ACTIVITY_PARAMETER = "activityParameter"
    TRANSITION = "transition"
    ACTIVITY_DIAGRAM = "activityDiagram"
    INTERNAL_DIAGRAM = "internalDiagram"


# ---------------------------------------------------------------------------
# Flow types
# ---------------------------------------------------------------------------


class RegistryError(ValueError):
    """A flow-type registry file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, source: str = "<registry>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True)
class FlowType:
    code: str
    flow_class: FlowClass
    description: str = ""


_CLASS_WORDS = {"MATERIAL": FlowClass.MATERIAL, "ENERGY": FlowClass.ENERGY}


class FlowTypeRegistry:
    """Maps specific flow codes (``S``, ``Liq``, ``EE``...) to a conservable class.

    Codes are matched case-insensitively; the spelling from the registry file
    is kept as the canonical one.
    """

    def __init__(self, entries: Iterable[FlowType] = ()):
        by_key: dict[str, FlowType] = {}
        for entry in entries:
            if not entry.code:
                raise RegistryError("empty flow code")
            if entry.flow_class is FlowClass.UNKNOWN:
                raise RegistryError(f"flow code {entry.code!r} must be MATERIAL or ENERGY")
            key = entry.code.casefold()
            if key in by_key:
                raise RegistryError(f"duplicate flow code {entry.code!r}")
            by_key[key] = entry
        self._entries = MappingProxyType(by_key)

    @classmethod
    def parse(cls, text: str, source: str = "<registry>") -> "FlowTypeRegistry":
        entries = []
        seen: set[str] = set()
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(None, 2)
            if len(parts) < 2:
                raise RegistryError("expected 'CODE CLASS [DESCRIPTION]'", lineno, source)
            code, word = parts[0], parts[1].upper()
            if word not in _CLASS_WORDS:
                raise RegistryError(f"unknown class {parts[1]!r}; use MATERIAL or ENERGY", lineno, source)
            if code.casefold() in seen:
                raise RegistryError(f"duplicate flow code {code!r}", lineno, source)
            seen.add(code.casefold())
            description = parts[2].strip() if len(parts) > 2 else ""
            entries.append(FlowType(code, _CLASS_WORDS[word], description))
        return cls(entries)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "FlowTypeRegistry":
        path = Path(path)
        return cls.parse(path.read_text(encoding="utf-8"), source=str(path))

    @classmethod
    def default(cls) -> "FlowTypeRegistry":
        text = resources.files("physlint.data").joinpath("flow_types.txt").read_text(encoding="utf-8")
        return cls.parse(text, source="flow_types.txt")

    def get(self, code: str) -> FlowType | None:
        return self._entries.get(code.strip().casefold())

    def classify(self, code: str) -> FlowClass:
        entry = self.get(code)
        return entry.flow_class if entry else FlowClass.UNKNOWN

    def canonical(self, code: str) -> str:
        """Registry spelling of ``code``, or ``code`` stripped if it is unknown."""
        entry = self.get(code)
        return entry.code if entry else code.strip()

    def codes(self) -> tuple[str, ...]:
        return tuple(e.code for e in self._entries.values())

    def __contains__(self, code: object) -> bool:
        return isinstance(code, str) and self.get(code) is not None

    def __iter__(self) -> Iterator[FlowType]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"FlowTypeRegistry({', '.join(self.codes())})"


def load_registry(path: Union[str, Path, None] = None) -> FlowTypeRegistry:
    """Load a registry file, or the built-in default when ``path`` is None."""
    if path is None:
        return FlowTypeRegistry.default()
    return FlowTypeRegistry.from_file(path)


def classify_flow(code: str, registry: FlowTypeRegistry) -> FlowClass:
    return registry.classify(code)


@dataclass(frozen=True)
class PortSignature:
    direction: Direction
    flow_code: str
    flow_class: FlowClass


_DIRECTION_WORDS = {"in": Direction.INPUT, "out": Direction.OUTPUT}


def parse_port_signature(port_name: str, registry: FlowTypeRegistry) -> PortSignature:
    """Read direction and flow type from a port name such as ``OUT_E`` or ``in_hot_Liq``.

    The token before the first underscore gives the direction, the token after
    the last underscore the flow code.  Names without an underscore carry
    neither.
    """
    tokens = [t.strip() for t in port_name.strip().split("_")]
    if len(tokens) < 2:
        return PortSignature(Direction.UNDECLARED, "", FlowClass.UNKNOWN)
    direction = _DIRECTION_WORDS.get(tokens[0].casefold(), Direction.UNDECLARED)
    code = registry.canonical(tokens[-1])
    return PortSignature(direction, code, registry.classify(code))


def parse_direction(text: str) -> Direction:
    """Interpret an explicit direction attribute (``in``, ``Output``, ``inout``...)."""
    word = text.strip().casefold()
    if word in ("in", "input"):
        return Direction.INPUT
    if word in ("out", "output", "return"):
        return Direction.OUTPUT
    return Direction.UNDECLARED


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    kind: ClassVar[ElementKind] = ElementKind.BLOCK
    name: str
    id: ElementId
    port_ids: tuple[ElementId, ...] = ()

    def references(self) -> Iterator[tuple[str, ElementId]]:
        for pid in self.port_ids:
            yield "ports", pid


@dataclass(frozen=True)
class Property:
    kind: ClassVar[ElementKind] = ElementKind.PROPERTY
    name: str
    id: ElementId
    owner_id: ElementId = ""

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id


@dataclass(frozen=True)
class Port:
    kind: ClassVar[ElementKind] = ElementKind.PORT
    name: str
    id: ElementId
    owner_id: ElementId = ""
    # stored and surfaced only; its meaning is not interpreted by any check
    reuses_property: ElementId | None = None

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id
        if self.reuses_property:
            yield "reusesProperty", self.reuses_property


@dataclass(frozen=True)
class Association:
    kind: ClassVar[ElementKind] = ElementKind.ASSOCIATION
    name: str
    id: ElementId
    source_name: str = ""
    destination_name: str = ""
    source_id: ElementId = ""
    destination_id: ElementId = ""

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        return f"{self.source_name or self.source_id}->{self.destination_name or self.destination_id}"

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "source", self.source_id
        yield "destination", self.destination_id


@dataclass(frozen=True)
class Action:
    kind: ClassVar[ElementKind] = ElementKind.ACTION
    name: str
    id: ElementId
    owner_id: ElementId = ""
    pin_ids: tuple[ElementId, ...] = ()

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id
        for pid in self.pin_ids:
            yield "pins", pid


@dataclass(frozen=True)
class ActionPin:
    kind: ClassVar[ElementKind] = ElementKind.ACTION_PIN
    name: str
    id: ElementId
    flow_type: str = ""
    owner_id: ElementId = ""
    direction: Direction = Direction.UNDECLARED

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id


@dataclass(frozen=True)
class ActivityParameter:
    kind: ClassVar[ElementKind] = ElementKind.ACTIVITY_PARAMETER
    name: str
    id: ElementId
    flow_type: str = ""
    owner_id: ElementId = ""
    direction: Direction = Direction.UNDECLARED

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id


@dataclass(frozen=True)
class Transition:
    kind: ClassVar[ElementKind] = ElementKind.TRANSITION
    name: str
    id: ElementId
    source_id: ElementId = ""
    target_id: ElementId = ""
    source_element_type: str = ""
    target_element_type: str = ""
    source_name: str = ""
    target_name: str = ""

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "source", self.source_id
        yield "target", self.target_id


@dataclass(frozen=True)
class ActivityDiagram:
    kind: ClassVar[ElementKind] = ElementKind.ACTIVITY_DIAGRAM
    name: str
    id: ElementId
    owner_id: ElementId = ""
    action_ids: tuple[ElementId, ...] = ()
    parameter_ids: tuple[ElementId, ...] = ()

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id
        for aid in self.action_ids:
            yield "actions", aid
        for pid in self.parameter_ids:
            yield "parameters", pid


@dataclass(frozen=True)
class InternalDiagram:
    kind: ClassVar[ElementKind] = ElementKind.INTERNAL_DIAGRAM
    name: str
    id: ElementId
    owner_id: ElementId = ""
    element_ids: tuple[ElementId, ...] = ()

    def references(self) -> Iterator[tuple[str, ElementId]]:
        yield "owner", self.owner_id
        for eid in self.element_ids:
            yield "elements", eid


Element = Union[
    Block,
    Property,
    Port,
    Association,
    Action,
    ActionPin,
    ActivityParameter,
    Transition,
    ActivityDiagram,
    InternalDiagram,
]

_ACT_KINDS = frozenset(
    {
        ElementKind.ACTION,
        ElementKind.ACTION_PIN,
        ElementKind.ACTIVITY_PARAMETER,
        ElementKind.TRANSITION,
        ElementKind.ACTIVITY_DIAGRAM,
    }
)


@dataclass(frozen=True)
class UnresolvedReference:
    referrer_id: ElementId
    attribute: str
    target_id: ElementId


def _frozen(d: dict) -> Mapping:
    return MappingProxyType(d)


@dataclass(frozen=True)
class ElementStore:
    """Indexed, read-only collection of every extracted model element.

    One mapping per element kind, each keyed by element id and ordered as in
    the source document.  References that do not resolve are listed in
    ``unresolved`` rather than rejected.
    """

    name: str
    blocks: Mapping[ElementId, Block]
    properties: Mapping[ElementId, Property]
    ports: Mapping[ElementId, Port]
    associations: Mapping[ElementId, Association]
    actions: Mapping[ElementId, Action]
    action_pins: Mapping[ElementId, ActionPin]
    activity_parameters: Mapping[ElementId, ActivityParameter]
    transitions: Mapping[ElementId, Transition]
    activity_diagrams: Mapping[ElementId, ActivityDiagram]
    internal_diagrams: Mapping[ElementId, InternalDiagram]
    signatures: Mapping[ElementId, PortSignature]
    unresolved: tuple[UnresolvedReference, ...]
    warnings: tuple[str, ...]
    _order: Mapping[ElementId, int] = field(repr=False, compare=False)
    _kinds: Mapping[ElementId, ElementKind] = field(repr=False, compare=False)
    _names: Mapping[ElementKind, Mapping[str, ElementId]] = field(repr=False, compare=False)
    _owned_ports: Mapping[ElementId, tuple[ElementId, ...]] = field(repr=False, compare=False)
    _shown_in_ibd: frozenset = field(repr=False, compare=False)

    _COLLECTIONS: ClassVar[dict[ElementKind, str]] = {
        ElementKind.BLOCK: "blocks",
        ElementKind.PROPERTY: "properties",
        ElementKind.PORT: "ports",
        ElementKind.ASSOCIATION: "associations",
        ElementKind.ACTION: "actions",
        ElementKind.ACTION_PIN: "action_pins",
        ElementKind.ACTIVITY_PARAMETER: "activity_parameters",
        ElementKind.TRANSITION: "transitions",
        ElementKind.ACTIVITY_DIAGRAM: "activity_diagrams",
        ElementKind.INTERNAL_DIAGRAM: "internal_diagrams",
    }

    @classmethod
    def build(
        cls,
        elements: Iterable[Element],
        registry: FlowTypeRegistry,
        name: str = "",
        warnings: Iterable[str] = (),
    ) -> "ElementStore":
        """Index ``elements`` (in document order) and compute port signatures."""
        collections: dict[ElementKind, dict[ElementId, Element]] = {k: {} for k in ElementKind}
        names: dict[ElementKind, dict[str, ElementId]] = {k: {} for k in ElementKind}
        order: dict[ElementId, int] = {}
        kinds: dict[ElementId, ElementKind] = {}
        notes = list(warnings)
        inherited = len(notes)

        for element in elements:
            if not element.id:
                notes.append(f"{element.kind.value} {element.name!r} has no id; skipped")
                continue
            if element.id in order:
                notes.append(f"duplicate id {element.id!r} ({element.kind.value}); later definition skipped")
                continue
            order[element.id] = len(order)
            kinds[element.id] = element.kind
            collections[element.kind][element.id] = element
            by_name = names[element.kind]
            if element.name in by_name:
                notes.append(
                    f"duplicate {element.kind.value} name {element.name!r}: "
                    f"{element.id!r} shadowed by {by_name[element.name]!r} in name lookup"
                )
            elif element.name:
                by_name[element.name] = element.id

        unresolved = [
            UnresolvedReference(element.id, attr, target)
            for kind in ElementKind
            for element in collections[kind].values()
            for attr, target in element.references()
            if target and target not in order
        ]

        owned: dict[ElementId, list[ElementId]] = {}
        for port in collections[ElementKind.PORT].values():
            owned.setdefault(port.owner_id, []).append(port.id)
        for block in collections[ElementKind.BLOCK].values():
            for pid in block.port_ids:
                port = collections[ElementKind.PORT].get(pid)
                if port is not None and port.owner_id != block.id:
                    notes.append(f"block {block.id!r} lists port {pid!r} owned by {port.owner_id!r}")

        shown = frozenset(
            eid for d in collections[ElementKind.INTERNAL_DIAGRAM].values() for eid in d.element_ids
        )
        signatures = {
            pid: parse_port_signature(port.name, registry)
            for pid, port in collections[ElementKind.PORT].items()
        }
        for message in notes[inherited:]:
            log.debug(message)

        kwargs = {attr: _frozen(collections[kind]) for kind, attr in cls._COLLECTIONS.items()}
        return cls(
            name=name,
            signatures=_frozen(signatures),
            unresolved=tuple(unresolved),
            warnings=tuple(notes),
            _order=_frozen(order),
            _kinds=_frozen(kinds),
            _names=_frozen({k: _frozen(v) for k, v in names.items()}),
            _owned_ports=_frozen({k: tuple(v) for k, v in owned.items()}),
            _shown_in_ibd=shown,
            **kwargs,
        )

    # -- lookups -----------------------------------------------------------

    def collection(self, kind: ElementKind) -> Mapping[ElementId, Element]:
        return getattr(self, self._COLLECTIONS[kind])

    def kind_of(self, element_id: ElementId) -> ElementKind | None:
        return self._kinds.get(element_id)

    def get(self, element_id: ElementId) -> Element | None:
        kind = self._kinds.get(element_id)
        return None if kind is None else self.collection(kind)[element_id]

    def __contains__(self, element_id: object) -> bool:
        return element_id in self._kinds

    def __len__(self) -> int:
        return len(self._kinds)

    def position(self, element_id: ElementId) -> int:
        """Document position; unknown ids sort last."""
        return self._order.get(element_id, len(self._order))

    def id_for(self, kind: ElementKind, name: str) -> ElementId | None:
        """First element of ``kind`` called ``name`` (first definition wins)."""
        return self._names[kind].get(name)

    def ports_owned_by(self, owner_id: ElementId) -> tuple[ElementId, ...]:
        return self._owned_ports.get(owner_id, ())

    def name_of(self, element_id: ElementId) -> str:
        element = self.get(element_id)
        if element is None:
            return ""
        if isinstance(element, Association):
            return element.label
        return element.name

    def diagram_of(self, element_id: ElementId) -> DiagramKind:
        """Innermost diagram kind an element is shown in.

        Activity elements live in an ACT; anything listed by an internal
        diagram, or owned by something that is, lives in an IBD; the rest is
        BDD-level.
        """
        kind = self._kinds.get(element_id)
        if kind in _ACT_KINDS:
            return DiagramKind.ACT
        if kind is ElementKind.INTERNAL_DIAGRAM or element_id in self._shown_in_ibd:
            return DiagramKind.IBD
        if kind is ElementKind.PORT:
            owner = self.ports[element_id].owner_id
            if owner in self._shown_in_ibd:
                return DiagramKind.IBD
        if kind is ElementKind.ASSOCIATION:
            assoc = self.associations[element_id]
            for end in (assoc.source_id, assoc.destination_id):
                if end in self.ports and self.diagram_of(end) is DiagramKind.IBD:
                    return DiagramKind.IBD
        return DiagramKind.BDD

    def counts(self) -> dict[str, int]:
        return {kind.value: len(self.collection(kind)) for kind in ElementKind}
