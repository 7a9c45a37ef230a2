import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from recordcost import DomainError
from recordcost.constants import CODATA2018
from recordcost.entropy import binary_entropy
from recordcost.landauer import cost_report
from recordcost.record_model import HAZARD, BinModel, click_rate, hazard_click_prob
from recordcost.scenarios import (
    SATURATION_LABEL,
    CircuitQedInput,
    DeSitterInput,
    circuit_qed_report,
    desitter_identity_check,
    desitter_report,
    half_planck_power,
)


def test_circuit_qed_equals_manual_composition():
    inp = CircuitQedInput(kappa=3.1e6, eta=0.55, tau=2e-6, p0=0.97, T=0.05)
    rep = circuit_qed_report(inp)
    gamma = inp.eta * inp.kappa
    p = hazard_click_prob(BinModel(HAZARD, gamma, inp.tau), inp.p0)
    h = binary_entropy(p)
    manual = cost_report(inp.T, inp.tau, h.nats)
    assert rep.p_click == p
    assert rep.click_rate == click_rate(gamma, inp.p0)
    assert rep.entropy_nats == h.nats
    assert rep.cost.to_dict() == manual.to_dict()


def test_circuit_qed_intermediates():
    rep = circuit_qed_report(CircuitQedInput())
    assert rep.gamma == pytest.approx(5.04e6)
    assert rep.click_rate == pytest.approx(5.04e4)
    assert rep.entropy_bits == pytest.approx(0.282779423490805, rel=1e-12)
    assert rep.cost.q_min_per_bin == pytest.approx(5.41235835984557e-26, rel=1e-12)
    d = json.loads(rep.to_json())
    assert d["scenario"] == "circuit-qed"
    assert d["assumptions"]


def test_circuit_qed_validation():
    with pytest.raises(DomainError):
        CircuitQedInput(eta=1.5)
    with pytest.raises(DomainError):
        CircuitQedInput(kappa=0.0)


def test_desitter_today():
    rep = desitter_report(DeSitterInput(2.2e-18))
    # oracle values
    assert rep.power_saturated == pytest.approx(1.81412745220564e52, rel=1e-12)
    assert rep.rho_Lambda == pytest.approx(7.77969263370268e-10, rel=1e-12)
    assert rep.power_density == pytest.approx(1.71153237941459e-27, rel=1e-12)
    assert rep.tau == 1 / 2.2e-18
    ok, res = desitter_identity_check(rep)
    assert ok, res
    d = json.loads(rep.to_json())
    assert d["saturation"] == SATURATION_LABEL
    assert any("1/H" in a for a in d["assumptions"])
    assert any("ln 2" in a for a in d["assumptions"])


def test_desitter_custom_tau():
    rep = desitter_report(DeSitterInput(2.2e-18), bins_tau=1.0)
    assert rep.power_saturated == pytest.approx(rep.q_tot_saturated)
    ok, _ = desitter_identity_check(rep)
    assert ok
    with pytest.raises(DomainError):
        desitter_report(DeSitterInput(2.2e-18), bins_tau=-1.0)


def test_desitter_validation():
    with pytest.raises(DomainError):
        DeSitterInput(-1.0)
    with pytest.raises(DomainError):
        DeSitterInput(math.inf)


def test_per_bit_quantities():
    rep = desitter_report(DeSitterInput(1e-10))
    assert rep.q_bit == pytest.approx(CODATA2018.k_B * rep.T_dS * math.log(2))
    assert rep.power_per_bit == pytest.approx(rep.q_bit * 1e-10)
    assert rep.N_max * rep.delta_area_per_bit == pytest.approx(rep.A_dS, rel=1e-14)
    assert half_planck_power() == pytest.approx(rep.power_saturated, rel=1e-14)


@given(st.floats(-18.0, 18.0), st.floats(-1.0, 1.0))
def test_desitter_scaling_laws(log_h, log_s):
    H, s = 10.0 ** log_h, 10.0 ** log_s
    a = desitter_report(DeSitterInput(H))
    b = desitter_report(DeSitterInput(s * H))
    rel = 1e-12
    assert b.T_dS == pytest.approx(a.T_dS * s, rel=rel)
    assert b.r_dS == pytest.approx(a.r_dS / s, rel=rel)
    assert b.A_dS == pytest.approx(a.A_dS / s ** 2, rel=rel)
    assert b.S_dS == pytest.approx(a.S_dS / s ** 2, rel=rel)
    assert b.N_max == pytest.approx(a.N_max / s ** 2, rel=rel)
    assert b.q_bit == pytest.approx(a.q_bit * s, rel=rel)
    assert b.q_tot_saturated == pytest.approx(a.q_tot_saturated / s, rel=rel)
    assert b.power_saturated == pytest.approx(a.power_saturated, rel=rel)
    assert b.rho_Lambda == pytest.approx(a.rho_Lambda * s ** 2, rel=rel)
    assert b.power_density == pytest.approx(a.power_density * s ** 3, rel=rel)
