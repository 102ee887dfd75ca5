"""Regenerate the case-study fixtures in corpus/.

    python scripts/build_corpus.py [OUTDIR]

Each model is a hand-designed recreation of one of four example systems
(hair dryer, wired speaker, coffeemaker, vacuum cleaner) with its defects
seeded deliberately.  The comments next to each defect say what it should
trigger; corpus/manifest.txt holds the expected counts.
"""

from __future__ import annotations

import sys
from pathlib import Path

from physlint.builder import ModelBuilder


def hair_dryer() -> ModelBuilder:
    b = ModelBuilder("Hair Dryer", "HD")
    hd = b.block("Hair Dryer")
    hd_power, hd_air_in, hd_air_out = b.ports(hd, "IN_Power_EE", "IN_Air_G", "OUT_Air_G")  # energy in, none out: barren

    power = b.block("Power Unit")
    pw_in, pw_out, pw_waste = b.ports(power, "IN_EE", "OUT_EE", "OUT_TE")  # 1 energy in, 2 out

    ui = b.block("User Interface")
    ui_in, ui_heat, ui_fan = b.ports(ui, "IN_EE", "OUT_Heat_EE", "OUT_Fan_EE")  # 1 energy in, 2 out

    heat = b.block("Heating Unit")
    he_ee, he_te, he_g_in, he_g_out = b.ports(heat, "IN_EE", "IN_TE", "IN_G", "OUT_G")  # 2 energy in, none out

    prop = b.block("Propulsion Unit")
    pr_ee, pr_g_in, pr_g_out = b.ports(prop, "IN_EE", "IN_G", "OUT_G")  # energy in, none out

    b.connect(hd_power, pw_in, "mains power")
    b.connect(hd_air_in, pr_g_in, "intake air")
    b.connect(pr_g_out, he_g_in, "moving air")
    b.connect(he_g_out, hd_air_out, "hot air")
    b.connect(pw_out, ui_in, "switched power")
    b.connect(pw_waste, he_te, "waste heat")
    b.connect(ui_heat, he_ee, "heater power")
    b.connect(ui_fan, pr_ee, "fan power")

    # body IBD
    p_power = b.prop(hd, "power unit")
    pp_in, pp_out = b.ports(p_power, "IN_EE", "OUT_EE")
    p_ui = b.prop(hd, "user interface")
    pu_in, pu_heat, pu_fan = b.ports(p_ui, "IN_EE", "OUT_Heat_EE", "OUT_Fan_EE")
    p_heat = b.prop(hd, "heating unit")
    ph_ee, ph_g_in, ph_g_out = b.ports(p_heat, "IN_EE", "IN_G", "OUT_G")
    p_prop = b.prop(hd, "propulsion unit")
    pq_ee, pq_g_in, pq_g_out = b.ports(p_prop, "IN_EE", "IN_G", "OUT_G")
    pq_e = b.port(p_prop, "OUT_E")  # dangling head
    body = [
        p_power, pp_in, pp_out, p_ui, pu_in, pu_heat, pu_fan, p_heat, ph_ee, ph_g_in, ph_g_out,
        p_prop, pq_ee, pq_g_in, pq_g_out, pq_e,
    ]
    body += [
        b.connect(hd_power, pp_in),
        b.connect(pp_out, pu_in),
        b.connect(pu_heat, ph_ee),
        b.connect(pu_fan, pq_ee),
        b.connect(hd_air_in, pq_g_in),
        b.connect(pq_g_out, ph_g_in),
        b.connect(ph_g_out, hd_air_out),
    ]
    b.ibd(hd, "Hair Dryer", body)

    # heating unit IBD
    coil = b.prop(heat, "heating coil")
    c_in, c_out = b.ports(coil, "IN_EE", "OUT_TE")
    duct = b.prop(heat, "air duct")
    d_g_in, d_coil, d_waste, d_g_out = b.ports(duct, "IN_G", "IN_Coil_TE", "IN_Waste_TE", "OUT_G")
    elems = [coil, c_in, c_out, duct, d_g_in, d_coil, d_waste, d_g_out]
    elems += [
        b.connect(he_ee, c_in),
        b.connect(c_out, d_coil),
        b.connect(he_te, d_waste),
        b.connect(he_g_in, d_g_in),
        b.connect(d_g_out, he_g_out),
    ]
    b.ibd(heat, "Heating Unit", elems)

    # propulsion unit IBD
    motor = b.prop(prop, "motor")
    m_in, m_out = b.ports(motor, "IN_EE", "OUT_ME")
    fan = b.prop(prop, "fan")
    f_me, f_g_in, f_g_out = b.ports(fan, "IN_ME", "IN_G", "OUT_G")
    elems = [motor, m_in, m_out, fan, f_me, f_g_in, f_g_out]
    elems += [
        b.connect(pr_ee, m_in),
        b.connect(m_out, f_me),
        b.connect(pr_g_in, f_g_in),
        b.connect(f_g_out, pr_g_out),
    ]
    b.ibd(prop, "Propulsion Unit", elems)

    # power unit IBD
    cord = b.prop(power, "power cord")
    co_in, co_out = b.ports(cord, "IN_EE", "OUT_EE")
    cutoff = b.prop(power, "thermal cutoff")
    cu_in, cu_out, cu_te = b.ports(cutoff, "IN_EE", "OUT_EE", "OUT_TE")
    elems = [cord, co_in, co_out, cutoff, cu_in, cu_out, cu_te]
    elems += [
        b.connect(pw_in, co_in),
        b.connect(co_out, cu_in),
        b.connect(cu_out, pw_out),
        b.connect(cu_te, pw_waste),
    ]
    b.ibd(power, "Power Unit", elems)
    return b


def _driver_ibd(b: ModelBuilder, block: str, ee_in: str, ae_out: str, te_out: str | None = None) -> None:
    coil = b.prop(block, "voice coil")
    names = ["IN_EE", "OUT_ME"] + (["OUT_TE"] if te_out else [])
    coil_ports = b.ports(coil, *names)
    cone = b.prop(block, "cone")
    cone_in, cone_out = b.ports(cone, "IN_ME", "OUT_AE")
    elems = [coil, *coil_ports, cone, cone_in, cone_out]
    elems += [b.connect(ee_in, coil_ports[0]), b.connect(coil_ports[1], cone_in), b.connect(cone_out, ae_out)]
    if te_out:
        elems.append(b.connect(coil_ports[2], te_out))
    b.ibd(block, b.attrs(block)["name"], elems)


def wired_speaker() -> ModelBuilder:
    b = ModelBuilder("Wired Speaker", "WS")
    ws = b.block("Wired Speaker")
    ws_in, ws_out = b.ports(ws, "IN_Signal_EE", "OUT_Sound_AE")
    st = b.block("Speaker Terminal")
    st_in, st_out = b.ports(st, "IN_EE", "OUT_EE")
    en = b.block("Enclosure")
    en_low, en_mid, en_high, en_te, en_out = b.ports(
        en, "IN_Low_AE", "IN_Mid_AE", "IN_High_AE", "IN_Heat_TE", "OUT_AE"
    )  # 4 energy in, 1 out
    cn = b.block("Crossover Network")
    cn_in, cn_low, cn_mid, cn_high = b.ports(cn, "IN_EE", "OUT_Low_EE", "OUT_Mid_EE", "OUT_High_EE")  # 1 in, 3 out
    wd = b.block("Woofer Driver")
    wd_in, wd_out, wd_te = b.ports(wd, "IN_EE", "OUT_AE", "OUT_TE")  # 1 in, 2 out
    md = b.block("Midrange Driver")
    md_in, md_out = b.ports(md, "IN_EE", "OUT_AE")
    td = b.block("Tweeter Driver")
    td_in, td_out = b.ports(td, "IN_EE", "OUT_AE")

    b.connect(ws_in, st_in, "speaker cable")
    b.connect(st_out, cn_in, "terminal feed")
    b.connect(cn_low, wd_in, "low band")
    b.connect(cn_mid, md_in, "mid band")
    b.connect(cn_high, td_in, "high band")
    b.connect(wd_out, en_low, "bass")
    b.connect(md_out, en_mid, "mids")
    b.connect(td_out, en_high, "treble")
    b.connect(wd_te, en_te, "coil heat")
    b.connect(en_out, ws_out, "sound")

    # speaker IBD
    term = b.prop(ws, "terminal")
    t_in, t_out = b.ports(term, "IN_EE", "OUT_EE")
    encl = b.prop(ws, "enclosure")
    e_in, e_out = b.ports(encl, "IN_EE", "OUT_AE")
    elems = [term, t_in, t_out, encl, e_in, e_out]
    elems += [b.connect(ws_in, t_in), b.connect(t_out, e_in), b.connect(e_out, ws_out)]
    b.ibd(ws, "Wired Speaker", elems)

    # enclosure IBD
    cab = b.prop(en, "cabinet")
    cab_ports = b.ports(cab, "IN_Low_AE", "IN_Mid_AE", "IN_High_AE", "IN_TE", "OUT_AE")
    reflex = b.prop(en, "bass reflex port")
    r_in, r_out = b.ports(reflex, "IN_AE", "OUT_AE")
    elems = [cab, *cab_ports, reflex, r_in, r_out]
    for outer, inner in zip((en_low, en_mid, en_high, en_te), cab_ports[:4]):
        elems.append(b.connect(outer, inner))
    elems += [b.connect(cab_ports[4], r_in), b.connect(r_out, en_out)]
    b.ibd(en, "Enclosure", elems)

    # crossover IBD
    elems = []
    for label, band_out in (("low-pass filter", cn_low), ("band-pass filter", cn_mid), ("high-pass filter", cn_high)):
        filt = b.prop(cn, label)
        f_in, f_out = b.ports(filt, "IN_EE", "OUT_EE")
        elems += [filt, f_in, f_out, b.connect(cn_in, f_in), b.connect(f_out, band_out)]
    b.ibd(cn, "Crossover Network", elems)

    _driver_ibd(b, wd, wd_in, wd_out, wd_te)
    _driver_ibd(b, md, md_in, md_out)
    _driver_ibd(b, td, td_in, td_out)
    return b


def coffeemaker() -> ModelBuilder:
    b = ModelBuilder("Coffeemaker", "CM")
    cm = b.block("Coffeemaker")
    cm_ee, cm_water, cm_grounds, cm_coffee, cm_waste, cm_te = b.ports(
        cm, "IN_EE", "IN_Water_Liq", "IN_Grounds_S", "OUT_Coffee_Liq", "OUT_Waste_S", "OUT_TE"
    )
    cu = b.block("Cooking Unit")
    cu_ee, cu_liq, cu_s, cu_liq_out, cu_s_out, cu_te = b.ports(
        cu, "IN_EE", "IN_Liq", "IN_S", "OUT_Liq", "OUT_S", "OUT_TE"
    )
    su = b.block("Storage Unit")
    su_liq, su_liq_out, su_ee, su_te = b.ports(su, "IN_Liq", "OUT_Liq", "IN_EE", "OUT_TE")
    wr = b.block("Water Reservoir")
    wr_in, wr_out = b.ports(wr, "IN_Liq", "OUT_Liq")
    hu = b.block("Hydraulic Unit")
    hu_in, hu_out = b.ports(hu, "IN_Liq", "OUT_Liq")
    he = b.block("Heating Unit")
    he_ee, he_liq, he_liq_out, he_te = b.ports(he, "IN_EE", "IN_Liq", "OUT_Liq", "OUT_TE")
    bu = b.block("Brewing Unit")
    bu_liq, bu_s, bu_liq_out, bu_s_out = b.ports(bu, "IN_Liq", "IN_S", "OUT_Liq", "OUT_S")
    bk = b.block("Basket")
    bk_liq, bk_s, bk_liq_out, bk_s_out = b.ports(bk, "IN_Liq", "IN_S", "OUT_Liq", "OUT_S")
    ca = b.block("Carafe")
    ca_in, ca_out = b.ports(ca, "IN_Liq", "OUT_Liq")

    for src, dst in (
        (cm_water, wr_in), (wr_out, cu_liq), (wr_out, hu_in), (hu_out, he_liq), (he_liq_out, bu_liq),
        (he_liq_out, bk_liq), (cm_grounds, cu_s), (cm_grounds, bu_s), (cm_grounds, bk_s),
        (bk_liq_out, ca_in), (bu_liq_out, ca_in), (cu_liq_out, su_liq), (ca_out, cm_coffee),
        (su_liq_out, cm_coffee), (bk_s_out, cm_waste), (bu_s_out, cm_waste), (cu_s_out, cm_waste),
        (cm_ee, cu_ee), (cm_ee, he_ee), (cm_ee, su_ee), (he_te, cm_te), (cu_te, cm_te), (su_te, cm_te),
    ):
        b.connect(src, dst)

    b.prop(cm, "timer")  # not shown in any IBD and has no ports: BDD-level dangling node

    # 9 IBDs; three ports below are left unconnected
    def chain(owner: str, name: str, parts: list[tuple[str, tuple[str, ...]]], links, extra=()):
        ids = {}
        elems = []
        for part, port_names in parts:
            pid = b.prop(owner, part)
            elems.append(pid)
            for pn in port_names:
                ids[part, pn] = b.port(pid, pn)
                elems.append(ids[part, pn])
        for src, dst in links:
            s = ids.get(src, src) if isinstance(src, tuple) else src
            d = ids.get(dst, dst) if isinstance(dst, tuple) else dst
            elems.append(b.connect(s, d))
        b.ibd(owner, name, elems)
        return ids

    chain(cm, "Coffeemaker", [("cooking unit", ("IN_EE", "IN_Liq", "OUT_Liq")), ("storage unit", ("IN_Liq", "OUT_Liq"))],
          [(cm_ee, ("cooking unit", "IN_EE")), (cm_water, ("cooking unit", "IN_Liq")),
           (("cooking unit", "OUT_Liq"), ("storage unit", "IN_Liq")), (("storage unit", "OUT_Liq"), cm_coffee)])
    chain(cu, "Cooking Unit", [("hydraulic unit", ("IN_Liq", "OUT_Liq")), ("heating unit", ("IN_EE", "IN_Liq", "OUT_Liq", "OUT_TE")),
                               ("brewing unit", ("IN_Liq", "IN_S", "OUT_Liq", "OUT_S"))],
          [(cu_liq, ("hydraulic unit", "IN_Liq")), (("hydraulic unit", "OUT_Liq"), ("heating unit", "IN_Liq")),
           (cu_ee, ("heating unit", "IN_EE")), (("heating unit", "OUT_TE"), cu_te),
           (("heating unit", "OUT_Liq"), ("brewing unit", "IN_Liq")), (cu_s, ("brewing unit", "IN_S")),
           (("brewing unit", "OUT_Liq"), cu_liq_out), (("brewing unit", "OUT_S"), cu_s_out)])
    chain(su, "Storage Unit", [("warming plate", ("IN_EE", "OUT_TE")), ("carafe", ("IN_Liq", "IN_TE", "OUT_Liq", "IN_Lid_G"))],
          [(su_ee, ("warming plate", "IN_EE")), (("warming plate", "OUT_TE"), ("carafe", "IN_TE")),
           (su_liq, ("carafe", "IN_Liq")), (("carafe", "OUT_Liq"), su_liq_out)])  # carafe IN_Lid_G: dangling tail
    chain(wr, "Water Reservoir", [("tank", ("IN_Liq", "OUT_Liq"))],
          [(wr_in, ("tank", "IN_Liq")), (("tank", "OUT_Liq"), wr_out)])
    chain(hu, "Hydraulic Unit", [("one-way valve", ("IN_Liq", "OUT_Liq")), ("riser tube", ("IN_Liq", "OUT_Liq", "OUT_Overflow_Liq"))],
          [(hu_in, ("one-way valve", "IN_Liq")), (("one-way valve", "OUT_Liq"), ("riser tube", "IN_Liq")),
           (("riser tube", "OUT_Liq"), hu_out)])  # riser tube OUT_Overflow_Liq: dangling head
    chain(he, "Heating Unit", [("heating element", ("IN_EE", "OUT_TE", "OUT_Leak_TE")), ("aluminium tube", ("IN_Liq", "IN_TE", "OUT_Liq"))],
          [(he_ee, ("heating element", "IN_EE")), (("heating element", "OUT_TE"), ("aluminium tube", "IN_TE")),
           (he_liq, ("aluminium tube", "IN_Liq")), (("aluminium tube", "OUT_Liq"), he_liq_out)])  # OUT_Leak_TE: dangling head
    chain(bu, "Brewing Unit", [("shower head", ("IN_Liq", "OUT_Liq")), ("filter", ("IN_Liq", "IN_S", "OUT_Liq", "OUT_S"))],
          [(bu_liq, ("shower head", "IN_Liq")), (("shower head", "OUT_Liq"), ("filter", "IN_Liq")),
           (bu_s, ("filter", "IN_S")), (("filter", "OUT_Liq"), bu_liq_out), (("filter", "OUT_S"), bu_s_out)])
    chain(bk, "Basket", [("filter paper", ("IN_Liq", "IN_S", "OUT_Liq", "OUT_S"))],
          [(bk_liq, ("filter paper", "IN_Liq")), (bk_s, ("filter paper", "IN_S")),
           (("filter paper", "OUT_Liq"), bk_liq_out), (("filter paper", "OUT_S"), bk_s_out)])
    chain(ca, "Carafe", [("glass jug", ("IN_Liq", "OUT_Liq"))],
          [(ca_in, ("glass jug", "IN_Liq")), (("glass jug", "OUT_Liq"), ca_out)])

    # 16 ACTs
    def act(owner, name, params, actions):
        a = b.activity(owner, name)
        for pname, code, direction in params:
            b.parameter(a, pname, code, direction)
        for label, ins, outs in actions:
            b.action(a, label, ins, outs)
        return a

    water_in = [("water", "Liq", "in")]
    act(he, "Insulation", [], [("guide heat", ["TE"], ["TE"])])  # no parameters: dangling node
    act(bk, "Basket", [("water", "Liq", "in"), ("grounds", "S", "in"), ("coffee", "Liq", "out")],
        [("store coffee grounds", ["S"], ["S"]),  # store with an output
         ("mix water and grounds", ["Liq", "S"], ["Liq"])])
    act(wr, "Water Reservoir", water_in + [("water out", "Liq", "out")],
        [("store water", ["Liq"], []), ("supply water", [], ["Liq"])])
    act(hu, "Hydraulic Unit", water_in + [("water out", "Liq", "out")],
        [("transfer water", ["Liq"], ["Liq"]), ("regulate water flow", ["Liq"], ["Liq"])])
    act(he, "Heating Unit", [("power", "EE", "in"), ("heat", "TE", "out")],
        [("convert electricity to heat", ["EE"], ["TE"]), ("heat water", ["Liq", "TE"], ["Liq"])])  # unknown verb
    act(bu, "Brewing Unit", water_in + [("coffee", "Liq", "out")],
        [("brew coffee", ["Liq", "S"], ["Liq"]),  # unknown verb
         ("separate grounds", ["Liq"], ["Liq", "S"])])
    act(ca, "Carafe", [("coffee", "Liq", "in"), ("coffee out", "Liq", "out")],
        [("store coffee", ["Liq"], ["Liq"])])  # store with an output
    act(su, "Warming Plate", [("power", "EE", "in")],
        [("convert electricity", ["EE"], ["TE"]), ("transfer heat", ["TE"], ["TE"])])
    act(su, "Storage Unit", [("coffee", "Liq", "in"), ("coffee out", "Liq", "out")],
        [("export coffee", ["Liq"], ["Liq"]), ("pour coffee", ["Liq"], ["Liq"])])  # unknown verb
    act(cu, "Cooking Unit", water_in,
        [("percolate water", ["Liq"], ["Liq"]),  # unknown verb
         ("distribute water", ["Liq"], ["Liq"])])  # distribute needs two outputs
    act(cm, "Power Supply", [("mains", "EE", "in")],
        [("import electricity", ["EE"], ["EE"]), ("transmit electricity", ["EE"], ["EE"])])
    act(cu, "Grounds Intake", [("grounds", "S", "in")],
        [("import coffee grounds", ["S"], ["S"]), ("guide grounds", ["S"], ["S", "S"])])  # guide has one output
    act(bu, "Filter", [("brew", "Liq", "in")],
        [("separate coffee", ["Liq"], ["Liq"])])  # separate needs two outputs
    act(bu, "Shower Head", water_in,
        [("distribute water", ["Liq"], ["Liq", "Liq"]), ("mix water", ["Liq"], ["Liq"])])  # mix needs two inputs
    act(cm, "Switch", [("mains", "EE", "in")],
        [("actuate heater", ["EE"], ["EE"])])
    act(he, "Thermostat", [("heat", "TE", "in")],
        [("sense temperature", ["TE"], ["TE"]), ("regulate power", ["EE"], ["EE", "EE"])])  # regulate has one output
    return b


def vacuum_cleaner() -> ModelBuilder:
    b = ModelBuilder("Vacuum Cleaner", "VC")
    blocks: dict[str, tuple[str, dict[str, str]]] = {}

    def block(name, *port_names):
        bid = b.block(name)
        blocks[name] = (bid, {pn: b.port(bid, pn) for pn in port_names})
        return blocks[name][1]

    vc = block("Vacuum Cleaner", "IN_EE", "OUT_TE", "IN_Dirty_G", "OUT_Clean_G", "IN_Debris_S", "OUT_Debris_S")
    cord = block("Power Cord", "IN_EE", "OUT_EE")
    handle = block("Handle Assembly", "IN_EE", "OUT_EE", "IN_Grip_ME", "OUT_Push_ME")
    drive = block("Drive Assembly", "IN_EE", "OUT_ME")
    motor = block("Motor", "IN_EE", "OUT_ME")
    fan = block("Fan", "IN_ME", "OUT_TE", "IN_G", "OUT_G")
    brush = block("Brush Roll", "IN_ME", "OUT_ME", "IN_S", "OUT_S")
    nozzle = block("Nozzle Assembly", "IN_G", "OUT_G", "IN_S", "OUT_S")
    hose = block("Hose", "IN_G", "OUT_G", "IN_S", "OUT_S")
    filt = block("Filter Assembly", "IN_G", "OUT_G", "IN_S", "OUT_S")
    binb = block("Dust Bin", "IN_S", "OUT_S")

    # BDD wiring, deliberately partial: the handle assembly, brush roll and
    # the block-level debris path were never connected (12 dangling ports).
    for src, dst in (
        (vc["IN_EE"], cord["IN_EE"]),
        (cord["OUT_EE"], drive["IN_EE"]),
        (drive["OUT_ME"], fan["IN_ME"]),
        (cord["OUT_EE"], motor["IN_EE"]),
        (motor["OUT_ME"], fan["IN_ME"]),
        (fan["OUT_TE"], vc["OUT_TE"]),
        (vc["IN_Dirty_G"], nozzle["IN_G"]),
        (nozzle["OUT_G"], hose["IN_G"]),
        (hose["OUT_G"], filt["IN_G"]),
        (filt["OUT_G"], fan["IN_G"]),
        (fan["OUT_G"], vc["OUT_Clean_G"]),
        (nozzle["OUT_S"], hose["IN_S"]),
        (hose["OUT_S"], filt["IN_S"]),
    ):
        b.connect(src, dst)
    # unconnected in the BDD: vc IN_Debris_S/OUT_Debris_S, handle x4, brush x4,
    # nozzle IN_S, filter OUT_S, dust bin x2  -> 14; the IBDs add 18 more

    def ibd(block_name, parts, links):
        owner, outer = blocks[block_name]
        ids, elems = {}, []
        for part, port_names in parts:
            pid = b.prop(owner, part)
            elems.append(pid)
            for pn in port_names:
                ids[part, pn] = b.port(pid, pn)
                elems.append(ids[part, pn])
        for src, dst in links:
            s = ids[src] if isinstance(src, tuple) else outer[src]
            d = ids[dst] if isinstance(dst, tuple) else outer[dst]
            elems.append(b.connect(s, d))
        b.ibd(owner, block_name, elems)

    # every IBD below leaves some part ports unconnected; counts in comments
    ibd("Vacuum Cleaner", [("cord reel", ("IN_EE", "OUT_EE")), ("suction unit", ("IN_EE", "IN_G", "OUT_G", "OUT_TE"))],
        [("IN_EE", ("cord reel", "IN_EE")), (("cord reel", "OUT_EE"), ("suction unit", "IN_EE")),
         ("IN_Dirty_G", ("suction unit", "IN_G"))])  # 2: suction OUT_G, OUT_TE
    ibd("Power Cord", [("plug", ("IN_EE", "OUT_EE")), ("cable", ("IN_EE", "OUT_EE"))],
        [("IN_EE", ("plug", "IN_EE")), (("plug", "OUT_EE"), ("cable", "IN_EE")), (("cable", "OUT_EE"), "OUT_EE")])
    ibd("Handle Assembly", [("handle", ()), ("switch", ()), ("grip", ("IN_ME", "OUT_ME")), ("wiring", ("IN_EE", "OUT_EE"))],
        [])  # handle, switch: dangling nodes; 4 ports
    ibd("Drive Assembly", [("belt", ("IN_ME", "OUT_ME")), ("pulley", ("IN_ME", "OUT_ME"))],
        [(("belt", "OUT_ME"), ("pulley", "IN_ME")), (("pulley", "OUT_ME"), "OUT_ME")])  # 1: belt IN_ME
    ibd("Motor", [("armature", ("IN_EE", "OUT_ME", "OUT_TE"))],
        [("IN_EE", ("armature", "IN_EE")), (("armature", "OUT_ME"), "OUT_ME")])  # 1: armature OUT_TE
    ibd("Fan", [("impeller", ("IN_ME", "IN_G", "OUT_G", "OUT_TE"))],
        [("IN_ME", ("impeller", "IN_ME")), ("IN_G", ("impeller", "IN_G")), (("impeller", "OUT_TE"), "OUT_TE")])  # 1: impeller OUT_G
    ibd("Brush Roll", [("bristles", ("IN_ME", "OUT_ME", "IN_S", "OUT_S"))],
        [])  # 4
    ibd("Nozzle Assembly", [("inlet", ("IN_G", "OUT_G")), ("debris channel", ("IN_S", "OUT_S"))],
        [("IN_G", ("inlet", "IN_G")), (("inlet", "OUT_G"), "OUT_G"), (("debris channel", "OUT_S"), "OUT_S")])  # 1
    ibd("Hose", [("tube", ("IN_G", "OUT_G", "IN_S", "OUT_S"))],
        [("IN_G", ("tube", "IN_G")), (("tube", "OUT_G"), "OUT_G"), ("IN_S", ("tube", "IN_S")), (("tube", "OUT_S"), "OUT_S")])  # 0
    ibd("Filter Assembly", [("cyclone", ("IN_G", "OUT_G", "OUT_S")), ("HEPA filter", ("IN_G", "OUT_G", "IN_S"))],
        [("IN_G", ("cyclone", "IN_G")), (("cyclone", "OUT_G"), ("HEPA filter", "IN_G")),
         (("HEPA filter", "OUT_G"), "OUT_G")])  # 2: cyclone OUT_S, HEPA IN_S
    ibd("Dust Bin", [("bin", ("IN_S", "OUT_S"))], [])  # 2
    return b


MODELS = {
    "hairdryer.xml": hair_dryer,
    "wired_speaker.xml": wired_speaker,
    "coffeemaker.xml": coffeemaker,
    "vacuum_cleaner.xml": vacuum_cleaner,
}


def main(argv: list[str]) -> int:
    outdir = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parent.parent / "corpus"
    outdir.mkdir(parents=True, exist_ok=True)
    for filename, factory in MODELS.items():
        (outdir / filename).write_text(factory().to_xml(), encoding="utf-8")
        print(f"wrote {outdir / filename}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
