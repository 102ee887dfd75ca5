from __future__ import annotations

import json
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from physlint.builder import ModelBuilder
from physlint.inspections import run_all
from physlint.model import DiagramKind
from physlint.report import CHECKS, Diagnostic, Family, SubCode, render_json, render_text, summarize


def hair_dryer_run(corpus_store, kb, registry):
    store = corpus_store("hairdryer.xml")
    diags = run_all(store, kb, registry)
    return diags, summarize(diags, store.name)


def test_hair_dryer_text(corpus_store, kb, registry):
    diags, summary = hair_dryer_run(corpus_store, kb, registry)
    text = render_text(diags, summary)
    lines = text.splitlines()
    assert sum(line.startswith("[I") for line in lines) == 6
    assert "Summary: 5 I1-Balance Law II, 1 I2-Incomplete Topology II" in lines
    assert lines[0].startswith("[I1-BalanceLawII] BDD/")
    assert lines[-1] == "6 errors"


def test_hair_dryer_json(corpus_store, kb, registry):
    diags, summary = hair_dryer_run(corpus_store, kb, registry)
    payload = json.loads(render_json(diags, summary))
    assert list(payload) == ["model", "structural_only", "total", "suppressed", "counts", "diagnostics"]
    assert payload["total"] == 6
    assert [d["sub_code"] for d in payload["diagnostics"]] == ["BalanceLawII"] * 5 + ["IncompleteTopologyII"]
    assert payload["diagnostics"][0]["label"] == "I1-Balance Law II"
    assert render_json(diags, summary) == render_json(list(diags), summarize(diags, "Hair Dryer"))


def test_empty_run():
    summary = summarize([], "m")
    assert render_text([], summary).splitlines() == ["Model: m", "0 errors"]
    payload = json.loads(render_json([], summary))
    assert payload["model"] == "m"
    assert payload["total"] == 0
    assert payload["diagnostics"] == []


def test_suppressed_hidden_unless_verbose(build_store, kb, registry):
    b = ModelBuilder("m")
    blk = b.block("Heater")
    b.port(blk, "IN_EE")
    act = b.activity(blk, "Heat")
    b.parameter(act, "power", "EE", "in")
    b.action(act, "store energy", ["EE"])
    store = build_store(b)
    diags = run_all(store, kb, registry, include_suppressed=True)
    summary = summarize(diags, store.name)
    assert summary.suppressed == 1
    quiet = render_text(diags, summary)
    assert "BL-EnergyImbalance" not in quiet and "BalanceLawII" not in quiet
    assert "(1 suppressed)" in quiet
    loud = render_text(diags, summary, verbose=True)
    assert "[suppressed]" in loud
    assert "note: suppressed" in loud


def test_structural_only_title():
    assert "(structural analysis only)" in render_text([], summarize([], "m", structural_only=True))


def test_family_pairing_enforced():
    with pytest.raises(ValueError):
        Diagnostic(Family.I2, SubCode.BALANCE_LAW_I, "BL-TypeMismatch", "a", "a", DiagramKind.BDD, "x")
    with pytest.raises(ValueError):
        Diagnostic(Family.I1, SubCode.BALANCE_LAW_I, "BL-EnergyImbalance", "a", "a", DiagramKind.BDD, "x")


def test_check_codes_map_to_table_labels():
    expected = {
        "BL-TypeMismatch": "I1-Balance Law I",
        "BL-MaterialImbalance": "I1-Balance Law II",
        "BL-EnergyImbalance": "I1-Balance Law II",
        "IT-DanglingNode": "I2-Incomplete Topology I",
        "IT-DanglingHead": "I2-Incomplete Topology II",
        "IT-DanglingTail": "I2-Incomplete Topology II",
        "DN-DanglingActivity": "I3-Dangling Node",
        "IB-UnknownFunction": "I3-Unknown Function",
        "IB-InferredBalance": "I3-Inferred Balance",
    }
    for check, label in expected.items():
        assert Diagnostic.from_check(check, "a", "a", DiagramKind.BDD, "m").label == label
    assert set(expected) <= set(CHECKS)


diagnostics = st.builds(
    Diagnostic.from_check,
    check=st.sampled_from(sorted(CHECKS)),
    element_id=st.text("abc123", min_size=1, max_size=4),
    element_name=st.text(max_size=6),
    diagram=st.sampled_from(list(DiagramKind)),
    message=st.text(max_size=10),
)


@given(st.lists(diagnostics, max_size=8), st.lists(diagnostics, max_size=8))
def test_json_is_lossless_and_injective(a, b):
    sa, sb = summarize(a, "m"), summarize(b, "m")
    ja, jb = render_json(a, sa), render_json(b, sb)
    back = json.loads(ja)["diagnostics"]
    assert back == [d.to_dict() for d in a]
    if a != b:
        assert ja != jb


@given(st.lists(diagnostics, max_size=12))
def test_summary_counts_match_multiset(diags):
    summary = summarize(diags)
    assert dict(summary.counts) == dict(Counter(d.sub_code for d in diags))
    assert summary.total == len(diags)
