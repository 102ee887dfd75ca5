from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, strategies as st

from physlint.model import (
    Block,
    Direction,
    ElementKind,
    ElementStore,
    FlowClass,
    FlowTypeRegistry,
    Port,
    RegistryError,
    classify_flow,
    load_registry,
    parse_direction,
    parse_port_signature,
)

MINIMUM_CODES = {
    "S": FlowClass.MATERIAL,
    "Liq": FlowClass.MATERIAL,
    "G": FlowClass.MATERIAL,
    "M": FlowClass.MATERIAL,
    "E": FlowClass.ENERGY,
    "EE": FlowClass.ENERGY,
    "ME": FlowClass.ENERGY,
    "TE": FlowClass.ENERGY,
    "AE": FlowClass.ENERGY,
}


@pytest.mark.parametrize(
    "name, direction, code, flow_class",
    [
        ("OUT_E", Direction.OUTPUT, "E", FlowClass.ENERGY),
        ("Out_M", Direction.OUTPUT, "M", FlowClass.MATERIAL),
        ("power", Direction.UNDECLARED, "", FlowClass.UNKNOWN),
        ("IN_Liq", Direction.INPUT, "Liq", FlowClass.MATERIAL),
        ("in_hot_liq", Direction.INPUT, "Liq", FlowClass.MATERIAL),
        ("IN_Power_EE", Direction.INPUT, "EE", FlowClass.ENERGY),
        ("side_EE", Direction.UNDECLARED, "EE", FlowClass.ENERGY),
        ("OUT_X9", Direction.OUTPUT, "X9", FlowClass.UNKNOWN),
    ],
)
def test_parse_port_signature(registry, name, direction, code, flow_class):
    sig = parse_port_signature(name, registry)
    assert (sig.direction, sig.flow_code, sig.flow_class) == (direction, code, flow_class)


@pytest.mark.parametrize("code, expected", [("EE", FlowClass.ENERGY), ("ee", FlowClass.ENERGY), ("X9", FlowClass.UNKNOWN)])
def test_classify_flow(registry, code, expected):
    assert classify_flow(code, registry) is expected


def test_default_registry_has_minimum_codes(registry):
    for code, flow_class in MINIMUM_CODES.items():
        assert registry.classify(code) is flow_class
        assert registry.classify(code.upper()) is flow_class
        assert registry.classify(code.lower()) is flow_class


def test_registry_round_trip(registry):
    for code in registry.codes():
        assert parse_port_signature("OUT_" + code, registry).flow_class == classify_flow(code, registry)


@given(st.sampled_from(sorted(MINIMUM_CODES)), st.sampled_from(["in", "IN", "In", "out", "OUT", "Out"]), st.text("abc", max_size=4))
def test_signature_grammar_property(code, prefix, middle):
    registry = load_registry()
    name = "_".join([prefix, middle, code]) if middle else f"{prefix}_{code}"
    sig = parse_port_signature(name, registry)
    assert sig.direction is (Direction.INPUT if prefix.lower() == "in" else Direction.OUTPUT)
    assert sig.flow_code == code
    assert sig.flow_class is MINIMUM_CODES[code]


@pytest.mark.parametrize(
    "text, expected",
    [("in", Direction.INPUT), ("Input", Direction.INPUT), ("out", Direction.OUTPUT), ("return", Direction.OUTPUT), ("inout", Direction.UNDECLARED)],
)
def test_parse_direction(text, expected):
    assert parse_direction(text) is expected


def test_registry_file_format(tmp_path):
    path = tmp_path / "flows.txt"
    path.write_text("# custom\nW MATERIAL water\nRAD energy radiation\n", encoding="utf-8")
    reg = FlowTypeRegistry.from_file(path)
    assert reg.codes() == ("W", "RAD")
    assert reg.classify("rad") is FlowClass.ENERGY
    assert reg.get("w").description == "water"


@pytest.mark.parametrize("text, line", [("S MATERIAL solid\nX PLASMA hot\n", 2), ("S\n", 1), ("S MATERIAL a\ns ENERGY b\n", 2)])
def test_registry_rejects_bad_lines(text, line):
    with pytest.raises(RegistryError) as info:
        FlowTypeRegistry.parse(text)
    assert info.value.line == line


def test_store_is_immutable(registry):
    store = ElementStore.build([Block("A", "b1", ())], registry)
    with pytest.raises(dataclasses.FrozenInstanceError):
        store.name = "x"
    with pytest.raises(TypeError):
        store.blocks["b2"] = Block("B", "b2", ())


def test_store_first_name_wins_with_warning(registry):
    store = ElementStore.build([Block("A", "b1", ()), Block("A", "b2", ())], registry)
    assert store.id_for(ElementKind.BLOCK, "A") == "b1"
    assert any("duplicate block name 'A'" in w for w in store.warnings)


def test_store_records_unresolved_references(registry):
    store = ElementStore.build([Block("A", "b1", ("p1", "p9")), Port("IN_EE", "p1", "b1")], registry)
    assert [(r.referrer_id, r.target_id) for r in store.unresolved] == [("b1", "p9")]
    assert store.signatures["p1"].direction is Direction.INPUT
