from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from models import clean_model, intake_grill_model
from physlint.builder import ModelBuilder
from physlint.inspections import (
    PortRole,
    check_activity_dangling,
    check_association_flow_integrity,
    check_block_balance,
    check_inferred_balance,
    check_state_change,
    check_topology,
    classify_ports,
    is_structural_only,
    run_all,
)
from physlint.model import DiagramKind
from physlint.report import Family, SubCode
from physlint.xmi import condense, extract_knowledge


def block_with(*port_names: str) -> ModelBuilder:
    b = ModelBuilder("m")
    blk = b.block("B")
    b.ports(blk, *port_names)
    return b


def joined(src_name: str, dst_name: str) -> ModelBuilder:
    b = ModelBuilder("m")
    owner = b.block("Owner")
    left = b.prop(owner, "left")
    right = b.prop(owner, "right")
    b.connect(b.port(left, src_name), b.port(right, dst_name), "flow")
    return b


def checks(diags) -> list[str]:
    return [d.check for d in diags]


# -- topology ---------------------------------------------------------------


def test_propulsion_unit_dangling_head(corpus_store):
    store = corpus_store("hairdryer.xml")
    diags = check_topology(store)
    assert len(diags) == 1
    (d,) = diags
    assert d.check == "IT-DanglingHead"
    port = store.ports[d.element_id]
    assert port.name == "OUT_E"
    assert store.properties[port.owner_id].name == "propulsion unit"
    assert d.diagram is DiagramKind.IBD


def test_handle_and_switch_dangling_nodes(corpus_store):
    store = corpus_store("vacuum_cleaner.xml")
    nodes = [d for d in check_topology(store) if d.check == "IT-DanglingNode"]
    assert sorted(d.element_name for d in nodes) == ["handle", "switch"]
    assert all(d.family is Family.I2 for d in nodes)


def test_joined_properties_are_clean(build_store):
    assert check_topology(build_store(joined("OUT_EE", "IN_EE"))) == []


def test_unconnected_ports_by_declared_direction(build_store):
    store = build_store(block_with("IN_EE", "OUT_EE", "power"))
    assert checks(check_topology(store)) == ["IT-DanglingTail", "IT-DanglingHead", "IT-UnconnectedPort"]


def test_port_classification_precedence(build_store):
    b = ModelBuilder("m")
    blk = b.block("B")
    a, mid, z = b.ports(blk, "OUT_EE", "IN_EE", "OUT_G")
    b.connect(a, mid)
    b.connect(mid, z)
    table = classify_ports(build_store(b))
    assert table[mid].role is PortRole.SOURCE
    assert table[mid].notes
    assert table[z].role is PortRole.DESTINATION
    assert table[a].role is PortRole.SOURCE
    assert not table[a].notes


# -- association integrity ----------------------------------------------------


def test_intake_grill_type_mismatch(build_store, registry):
    diags = check_association_flow_integrity(build_store(intake_grill_model()), registry)
    assert checks(diags) == ["BL-TypeMismatch"]
    assert diags[0].sub_code is SubCode.BALANCE_LAW_I


@pytest.mark.parametrize(
    "src, dst, expected",
    [
        ("OUT_EE", "IN_EE", []),
        ("OUT_Liq", "IN_G", ["BL-TypeMismatch"]),
        ("OUT_ee", "IN_EE", []),
        ("OUT_Q", "IN_EE", ["BL-UnknownFlowType"]),
        ("power", "IN_EE", ["BL-UnknownFlowType"]),
    ],
)
def test_association_codes(build_store, registry, src, dst, expected):
    assert checks(check_association_flow_integrity(build_store(joined(src, dst)), registry)) == expected


def test_unresolved_endpoint(build_store, registry):
    b = joined("OUT_EE", "IN_EE")
    (aid,) = b.ids("association")
    b.set(aid, destination="nowhere")
    assert checks(check_association_flow_integrity(build_store(b), registry)) == ["BL-UnresolvedEndpoint"]


def test_liquid_to_gas_does_not_unbalance_blocks(build_store, registry):
    # class-vs-code separation: the mismatch is the association's problem only
    b = ModelBuilder("m")
    a = b.block("A")
    a_in, a_out = b.ports(a, "IN_Liq", "OUT_Liq")
    c = b.block("C")
    c_in, c_out = b.ports(c, "IN_G", "OUT_G")
    b.connect(a_out, c_in)
    store = build_store(b)
    assert checks(check_association_flow_integrity(store, registry)) == ["BL-TypeMismatch"]
    assert check_block_balance(store, registry) == []


# -- block balance ------------------------------------------------------------


def test_hair_dryer_block_is_barren(corpus_store, registry):
    store = corpus_store("hairdryer.xml")
    diags = check_block_balance(store, registry)
    assert len(diags) == 5
    hd = next(d for d in diags if d.element_name == "Hair Dryer")
    assert hd.check == "BL-EnergyImbalance"
    assert any("barren" in n for n in hd.notes)
    assert all(d.diagram is DiagramKind.BDD for d in diags)


@pytest.mark.parametrize(
    "ports, expected",
    [
        (("IN_M", "OUT_M", "IN_EE", "OUT_TE"), []),
        ((), []),
        (("IN_M", "IN_S", "OUT_M"), ["BL-MaterialImbalance"]),
        (("OUT_EE",), ["BL-EnergyImbalance"]),
        (("IN_M", "OUT_E", "OUT_E", "power", "OUT_Q"), ["BL-MaterialImbalance", "BL-EnergyImbalance"]),
    ],
)
def test_block_balance_examples(build_store, registry, ports, expected):
    assert checks(check_block_balance(build_store(block_with(*ports)), registry)) == expected


def test_orphan_annotation(build_store, registry):
    (d,) = check_block_balance(build_store(block_with("OUT_EE")), registry)
    assert any("orphan" in n for n in d.notes)


# -- state change -------------------------------------------------------------


@pytest.mark.parametrize(
    "ports, expected",
    [
        (("IN_Liq", "OUT_G"), 1),
        (("IN_Liq", "OUT_G", "IN_TE"), 0),
        (("IN_S", "OUT_S"), 0),
        (("IN_S", "IN_Liq", "OUT_Liq", "OUT_S"), 0),
    ],
)
def test_state_change(build_store, registry, ports, expected):
    diags = check_state_change(build_store(block_with(*ports)), registry)
    assert len(diags) == expected
    assert all(d.check == "BL-StateChangeWithoutEnergy" for d in diags)


# -- activity diagrams --------------------------------------------------------


def test_insulation_act_is_dangling(corpus_store):
    diags = check_activity_dangling(corpus_store("coffeemaker.xml"))
    assert [d.element_name for d in diags] == ["Insulation"]
    assert diags[0].diagram is DiagramKind.ACT


def act_model(action: str, inputs=(), outputs=(), parameters=(("IN_Liq", "Liq", "in"),)) -> ModelBuilder:
    b = ModelBuilder("m")
    blk = b.block("B")
    act = b.activity(blk, "A")
    for name, code, direction in parameters:
        b.parameter(act, name, code, direction)
    b.action(act, action, inputs, outputs)
    return b


def test_act_with_one_parameter_is_fine(build_store):
    assert check_activity_dangling(build_store(act_model("store water", ["Liq"]))) == []


def test_no_acts_means_structural_only(build_store, kb):
    store = build_store(block_with("IN_EE", "OUT_EE"))
    assert check_activity_dangling(store) == []
    assert is_structural_only(store, kb)
    assert is_structural_only(build_store(act_model("store water", ["Liq"])), None)
    assert not is_structural_only(build_store(act_model("store water", ["Liq"])), kb)


@pytest.mark.parametrize(
    "action, inputs, outputs, expected",
    [
        ("store coffee", ["Liq"], ["Liq"], ["IB-InferredBalance"]),
        ("percolate water", ["Liq"], ["Liq"], ["IB-UnknownFunction"]),
        ("store water", ["Liq"], [], []),
        ("Mix water and grounds", ["Liq", "S"], ["Liq"], []),
        ("mix water", ["Liq"], ["EE"], ["IB-InferredBalance", "IB-InferredBalance"]),
    ],
)
def test_inferred_balance(build_store, kb, registry, action, inputs, outputs, expected):
    diags = check_inferred_balance(build_store(act_model(action, inputs, outputs)), kb, registry)
    assert checks(diags) == expected


def test_inferred_balance_quotes_rule(build_store, kb, registry):
    (d,) = check_inferred_balance(build_store(act_model("store coffee", ["Liq"], ["Liq"])), kb, registry)
    assert "'store' expects" in d.message


# -- run_all ------------------------------------------------------------------


def tally(diags) -> dict[SubCode, int]:
    return dict(Counter(d.sub_code for d in diags))


def test_hair_dryer_run(corpus_store, kb, registry):
    diags = run_all(corpus_store("hairdryer.xml"), kb, registry)
    assert tally(diags) == {SubCode.BALANCE_LAW_II: 5, SubCode.INCOMPLETE_TOPOLOGY_II: 1}


def test_wired_speaker_run(corpus_store, kb, registry):
    diags = run_all(corpus_store("wired_speaker.xml"), kb, registry)
    assert tally(diags) == {SubCode.BALANCE_LAW_II: 3}
    assert {d.diagram for d in diags} == {DiagramKind.BDD}


def test_clean_model_run(build_store, kb, registry):
    assert run_all(build_store(clean_model().builder), kb, registry) == []
    assert run_all(build_store(joined("OUT_EE", "IN_EE")), kb, registry) == []


def test_order_is_family_then_document(corpus_store, kb, registry):
    store = corpus_store("coffeemaker.xml")
    diags = run_all(store, kb, registry)
    keys = [(d.family.value, store.position(d.element_id)) for d in diags]
    assert keys == sorted(keys)


def test_structural_only_flag_skips_acts(corpus_store, kb, registry):
    store = corpus_store("coffeemaker.xml")
    diags = run_all(store, kb, registry, structural_only=True)
    assert all(d.family is not Family.I3 for d in diags)


def suppressible() -> tuple[ModelBuilder, str]:
    """A barren block whose ACT is valid."""
    b = ModelBuilder("m")
    blk = b.block("Heater")
    b.ports(blk, "IN_EE")
    act = b.activity(blk, "Heat")
    b.parameter(act, "power", "EE", "in")
    b.action(act, "store energy", ["EE"])
    return b, blk


def test_suppression(build_store, kb, registry):
    b, blk = suppressible()
    store = build_store(b)
    assert not any(d.element_id == blk and d.family is Family.I1 for d in run_all(store, kb, registry))
    flagged = [d for d in run_all(store, kb, registry, include_suppressed=True) if d.suppressed]
    assert [d.check for d in flagged] == ["BL-EnergyImbalance"]
    assert "suppressed" in flagged[0].notes[-1]
    # structural-only runs never consult the ACT, so nothing is suppressed
    assert "BL-EnergyImbalance" in checks(run_all(store, kb, registry, structural_only=True))


def test_invalid_act_does_not_suppress(build_store, kb, registry):
    b, blk = suppressible()
    b.set(b.ids("action")[0], name="brew energy")
    got = checks(run_all(build_store(b), kb, registry))
    assert "BL-EnergyImbalance" in got
    assert "IB-UnknownFunction" in got


# -- properties over generated models -----------------------------------------

CODES = ["EE", "TE", "Liq", "G", "S", "Q", ""]


@st.composite
def random_models(draw):
    b = ModelBuilder("gen")
    owners = []
    for i in range(draw(st.integers(1, 4))):
        blk = b.block(f"B{i}")
        owners.append(blk)
        for j in range(draw(st.integers(0, 2))):
            owners.append(b.prop(blk, f"p{i}{j}"))
    ports = []
    for _ in range(draw(st.integers(0, 10))):
        owner = draw(st.sampled_from(owners))
        prefix = draw(st.sampled_from(["IN_", "OUT_", "", "x_"]))
        ports.append(b.port(owner, prefix + draw(st.sampled_from(CODES))))
    if ports:
        for _ in range(draw(st.integers(0, 8))):
            b.connect(draw(st.sampled_from(ports)), draw(st.sampled_from(ports + ["ghost"])))
    for k in range(draw(st.integers(0, 3))):
        act = b.activity(draw(st.sampled_from(owners)), f"A{k}")
        for _ in range(draw(st.integers(0, 2))):
            b.parameter(act, "p", draw(st.sampled_from(CODES)), draw(st.sampled_from(["in", "out", "?"])))
        for _ in range(draw(st.integers(0, 3))):
            verb = draw(st.sampled_from(["store", "mix", "convert", "brew", "supply", "Separate", ""]))
            b.action(
                act,
                f"{verb} thing",
                draw(st.lists(st.sampled_from(CODES), max_size=3)),
                draw(st.lists(st.sampled_from(CODES), max_size=3)),
            )
    return b


@settings(max_examples=150, deadline=None)
@given(random_models())
def test_run_all_properties(kb, registry, b):
    store = extract_knowledge(condense(b.to_xml()), registry)
    diags = run_all(store, kb, registry)

    # localization
    assert all(d.element_id in store for d in diags)

    # bound on the number of findings
    max_constraints = 4
    bound = (
        len(store.ports) + len(store.properties) + len(store.associations) + 3 * len(store.blocks)
        + len(store.actions) * (1 + max_constraints) + len(store.activity_diagrams)
    )
    assert len(diags) <= bound

    # determinism
    assert run_all(store, kb, registry) == diags

    # suppression soundness
    findings = check_inferred_balance(store, kb, registry)
    failing_actions = {d.element_id for d in findings}
    for blk in store.blocks:
        actions = [
            aid for act in store.activity_diagrams.values() if act.owner_id == blk for aid in act.action_ids
            if aid in store.actions
        ]
        if actions and not failing_actions.intersection(actions):
            assert not any(d.element_id == blk and d.family is Family.I1 for d in diags)
