"""Small builder-made models shared by several test modules."""

from __future__ import annotations

from dataclasses import dataclass

from physlint.builder import ModelBuilder


@dataclass
class CleanModel:
    builder: ModelBuilder
    power: str
    heater: str
    tank: str
    activity: str
    store_action: str


def clean_model() -> CleanModel:
    """Three balanced, fully wired blocks and one valid ACT.

    Every energy output a mutation may delete feeds a port that has a second
    feeder, so deleting it unbalances its block without leaving a dangling
    port behind.
    """
    b = ModelBuilder("Water Heater", "WH")
    power = b.block("Power Unit")
    pu_in, pu_out = b.ports(power, "IN_EE", "OUT_EE")
    heater = b.block("Heater")
    ht_ee, ht_liq_in, ht_liq_out, ht_te = b.ports(heater, "IN_EE", "IN_Liq", "OUT_Liq", "OUT_TE")
    tank = b.block("Tank")
    tk_in, tk_out = b.ports(tank, "IN_Liq", "OUT_Liq")

    mains = b.prop(heater, "mains")
    mains_out = b.port(mains, "OUT_EE")
    faucet = b.prop(heater, "faucet")
    faucet_out = b.port(faucet, "OUT_Liq")
    cup = b.prop(heater, "cup")
    cup_in = b.port(cup, "IN_Liq")
    surroundings = b.prop(heater, "surroundings")
    surr_in = b.port(surroundings, "IN_TE")
    cell = b.prop(heater, "backup cell")
    cell_ee, cell_te = b.ports(cell, "OUT_EE", "OUT_TE")

    links = [
        b.connect(mains_out, pu_in, "mains"),
        b.connect(pu_out, ht_ee, "supply"),
        b.connect(cell_ee, ht_ee, "backup supply"),
        b.connect(faucet_out, tk_in, "fill"),
        b.connect(tk_out, ht_liq_in, "feed"),
        b.connect(ht_liq_out, cup_in, "pour"),
        b.connect(ht_te, surr_in, "loss"),
        b.connect(cell_te, surr_in, "cell heat"),
    ]
    b.ibd(
        heater,
        "Heater Context",
        [mains, mains_out, faucet, faucet_out, cup, cup_in, surroundings, surr_in, cell, cell_ee, cell_te, *links],
    )

    act = b.activity(tank, "Tank")
    p_in = b.parameter(act, "IN_Liq", "Liq", "in")
    p_out = b.parameter(act, "OUT_Liq", "Liq", "out")
    store = b.action(act, "store water", inputs=["Liq"])
    supply = b.action(act, "supply water", outputs=["Liq"])
    b.transition(p_in, b.ids("actionPin")[0])
    b.transition(b.ids("actionPin")[1], p_out)
    assert b.attrs(b.ids("actionPin")[0])["owner"] == store
    assert b.attrs(b.ids("actionPin")[1])["owner"] == supply
    return CleanModel(b, power, heater, tank, act, store)


def intake_grill_model() -> ModelBuilder:
    """A material output wired into an energy port."""
    b = ModelBuilder("Intake", "IG")
    grill = b.block("Intake Grill")
    out_m = b.port(grill, "Out_M")
    fan = b.block("Fan")
    in_e = b.port(fan, "OUT_E")
    b.connect(out_m, in_e, "air")
    return b


def remove_with_associations(b: ModelBuilder, port_id: str) -> None:
    b.remove(port_id)
    for aid in b.ids("association"):
        attrs = b.attrs(aid)
        if port_id in (attrs["source"], attrs["destination"]):
            b.remove(aid)
    present = set(b.ids())
    for did in b.ids("internalDiagram"):
        listed = b.attrs(did)["elements"].split()
        b.set(did, elements=" ".join(e for e in listed if e in present))
