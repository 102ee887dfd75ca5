"""Build canonical model documents from Python.

Used to author fixtures and to mutate models in tests::

    b = ModelBuilder("kettle")
    heater = b.block("Heater")
    p_in = b.port(heater, "IN_EE")
    ...
    xml_text = b.to_xml()

Ids are sequential (``<prefix>001``, ``<prefix>002``...) so documents are
reproducible.  ``ports``/``pins``/``actions``/``parameters`` lists are not
written; ingestion derives them from owner attributes.
"""

from __future__ import annotations

import copy
from typing import Iterable

from physlint.xmi import ID, CanonicalDocument, CanonicalElement, condense


class ModelBuilder:
    def __init__(self, name: str, id_prefix: str = "id"):
        self.name = name
        self.id_prefix = id_prefix
        self._counter = 0
        self._elements: dict[str, tuple[str, dict[str, str]]] = {}

    def _add(self, tag: str, attrs: dict[str, str]) -> str:
        self._counter += 1
        element_id = f"{self.id_prefix}{self._counter:03d}"
        self._elements[element_id] = (tag, {"name": attrs.pop("name", ""), ID: element_id, **attrs})
        return element_id

    def _name(self, element_id: str) -> str:
        entry = self._elements.get(element_id)
        return entry[1].get("name", "") if entry else ""

    # -- structure ---------------------------------------------------------

    def block(self, name: str) -> str:
        return self._add("block", {"name": name})

    def prop(self, owner: str, name: str) -> str:
        return self._add("property", {"name": name, "owner": owner})

    def port(self, owner: str, name: str) -> str:
        return self._add("port", {"name": name, "owner": owner})

    def ports(self, owner: str, *names: str) -> list[str]:
        return [self.port(owner, n) for n in names]

    def connect(self, source: str, destination: str, name: str = "") -> str:
        return self._add(
            "association",
            {
                "name": name,
                "sourceName": self._name(source),
                "destinationName": self._name(destination),
                "source": source,
                "destination": destination,
            },
        )

    def ibd(self, owner: str, name: str, elements: Iterable[str]) -> str:
        return self._add("internalDiagram", {"name": name, "owner": owner, "elements": " ".join(elements)})

    # -- behaviour ---------------------------------------------------------

    def activity(self, owner: str, name: str) -> str:
        return self._add("activityDiagram", {"name": name, "owner": owner})

    def parameter(self, activity: str, name: str, flow_type: str, direction: str) -> str:
        return self._add(
            "activityParameter", {"name": name, "flowType": flow_type, "owner": activity, "direction": direction}
        )

    def action(self, activity: str, name: str, inputs: Iterable[str] = (), outputs: Iterable[str] = ()) -> str:
        """Add an action with one input pin per code in ``inputs`` and one output pin per code in ``outputs``."""
        action_id = self._add("action", {"name": name, "owner": activity})
        for code in inputs:
            self.pin(action_id, code, "in")
        for code in outputs:
            self.pin(action_id, code, "out")
        return action_id

    def pin(self, action: str, flow_type: str, direction: str, name: str = "") -> str:
        label = name or f"{direction}_{flow_type}"
        return self._add("actionPin", {"name": label, "flowType": flow_type, "owner": action, "direction": direction})

    def transition(self, source: str, target: str, name: str = "") -> str:
        return self._add(
            "transition",
            {
                "name": name,
                "sourceName": self._name(source),
                "targetName": self._name(target),
                "source": source,
                "target": target,
                "sourceElementType": self._elements[source][0] if source in self._elements else "",
                "targetElementType": self._elements[target][0] if target in self._elements else "",
            },
        )

    # -- editing -----------------------------------------------------------

    def ids(self, tag: str | None = None) -> list[str]:
        return [eid for eid, (t, _) in self._elements.items() if tag is None or t == tag]

    def tag_of(self, element_id: str) -> str:
        return self._elements[element_id][0]

    def attrs(self, element_id: str) -> dict[str, str]:
        return dict(self._elements[element_id][1])

    def set(self, element_id: str, **attrs: str) -> None:
        self._elements[element_id][1].update(attrs)

    def remove(self, element_id: str) -> None:
        del self._elements[element_id]

    def copy(self) -> "ModelBuilder":
        return copy.deepcopy(self)

    # -- output ------------------------------------------------------------

    def document(self) -> CanonicalDocument:
        elements = tuple(CanonicalElement(tag, tuple(attrs.items())) for tag, attrs in self._elements.values())
        return CanonicalDocument(self.name, elements)

    def to_xml(self) -> str:
        # round-trip through condense so attribute order follows the whitelist
        return condense(self.document().to_xml()).to_xml()
