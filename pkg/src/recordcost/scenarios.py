"""End-to-end worked examples: cavity photon monitoring and a de Sitter horizon.

Both reports are value objects that serialize to JSON with an
``assumptions`` list spelling out what the numbers depend on.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

from ._validation import check_nonnegative, check_positive, check_probability
from .constants import CODATA2018
from .entropy import LN2, binary_entropy
from .landauer import CostReport, cost_report
from .record_model import HAZARD, BinModel, click_rate, hazard_click_prob

SATURATION_LABEL = "extremal bound under full saturation hypothesis"


@dataclass(frozen=True)
class CircuitQedInput:
    kappa: float = 6.3e6
    eta: float = 0.8
    tau: float = 1e-6
    p0: float = 0.99
    T: float = 0.02

    def __post_init__(self):
        check_positive(self.kappa, "kappa")
        check_probability(self.eta, "eta")
        check_positive(self.tau, "tau")
        check_probability(self.p0, "p0")
        check_nonnegative(self.T, "T")


@dataclass(frozen=True)
class CircuitQedReport:
    inputs: CircuitQedInput
    gamma: float
    click_rate: float
    p_click: float
    entropy_nats: float
    entropy_bits: float
    cost: CostReport
    assumptions: tuple = ()

    def to_dict(self):
        return {
            "scenario": "circuit-qed",
            "inputs": asdict(self.inputs),
            "gamma_per_s": self.gamma,
            "lambda_per_s": self.click_rate,
            "P_tau": self.p_click,
            "H2_nats": self.entropy_nats,
            "H2_bits": self.entropy_bits,
            "cost": self.cost.to_dict(),
            "assumptions": list(self.assumptions),
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def circuit_qed_report(inp, constants=CODATA2018):
    """Single cavity mode read out through a lossy line with efficiency eta.

    The measurement strength is taken as ``gamma = eta * kappa`` and the
    hazard click law is used.
    """
    gamma = inp.eta * inp.kappa
    model = BinModel(HAZARD, gamma, inp.tau)
    lam = click_rate(gamma, inp.p0)
    p = hazard_click_prob(model, inp.p0)
    h = binary_entropy(p)
    return CircuitQedReport(
        inputs=inp,
        gamma=gamma,
        click_rate=lam,
        p_click=p,
        entropy_nats=h.nats,
        entropy_bits=h.bits,
        cost=cost_report(inp.T, inp.tau, h.nats, 1, constants),
        assumptions=(
            "gamma = eta * kappa (click rate set by cavity decay and detection efficiency)",
            "hazard click law with p0 frozen at the bin start",
            "classical register reset after every bin",
            "optimal erasure exploiting the record bias",
        ),
    )


@dataclass(frozen=True)
class DeSitterInput:
    hubble_rate: float

    def __post_init__(self):
        check_positive(self.hubble_rate, "hubble_rate")


@dataclass(frozen=True)
class DeSitterReport:
    hubble_rate: float
    tau: float
    T_dS: float
    r_dS: float
    A_dS: float
    S_dS: float
    V_dS: float
    N_max: float
    q_bit: float
    power_per_bit: float
    delta_area_per_bit: float
    q_tot_saturated: float
    power_saturated: float
    rho_Lambda: float
    power_density: float
    constants: object = field(default=CODATA2018, repr=False, compare=False)
    assumptions: tuple = ()

    def to_dict(self):
        d = {
            "scenario": "de-sitter",
            "inputs": {"hubble_rate_per_s": self.hubble_rate, "tau_s": self.tau},
            "T_dS_K": self.T_dS,
            "r_dS_m": self.r_dS,
            "A_dS_m2": self.A_dS,
            "S_dS_J_per_K": self.S_dS,
            "V_dS_m3": self.V_dS,
            "N_max": self.N_max,
            "q_bit_J": self.q_bit,
            "power_per_bit_W": self.power_per_bit,
            "delta_area_per_bit_m2": self.delta_area_per_bit,
            "q_tot_saturated_J": self.q_tot_saturated,
            "power_saturated_W": self.power_saturated,
            "rho_Lambda_J_per_m3": self.rho_Lambda,
            "power_density_W_per_m3": self.power_density,
            "saturation": SATURATION_LABEL,
            "assumptions": list(self.assumptions),
        }
        return d

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def desitter_report(inp, bins_tau=None, constants=CODATA2018):
    """Horizon-limited readout of unbiased bits erased at the horizon temperature.

    ``bins_tau`` defaults to the horizon time 1/H. Saturated quantities
    assume the number of bits fills the de Sitter entropy budget.
    """
    H = inp.hubble_rate
    tau = 1.0 / H if bins_tau is None else check_positive(bins_tau, "bins_tau")
    k, hbar, G, c = constants.k_B, constants.hbar, constants.G, constants.c
    lp2 = constants.planck_area
    T = hbar * H / (2 * math.pi * k)
    r = c / H
    A = 4 * math.pi * r ** 2
    S = k * A / (4 * lp2)
    V = 4.0 / 3.0 * math.pi * r ** 3
    q_bit = k * T * LN2
    q_tot = T * S
    # Lambda = 3 H^2 / c^2 so that rho = Lambda c^4 / (8 pi G)
    rho = 3 * H ** 2 * c ** 2 / (8 * math.pi * G)
    tau_note = "tau = 1/H (horizon time)" if bins_tau is None else f"tau = {tau!r} s"
    return DeSitterReport(
        hubble_rate=H,
        tau=tau,
        T_dS=T,
        r_dS=r,
        A_dS=A,
        S_dS=S,
        V_dS=V,
        N_max=A / (4 * lp2 * LN2),
        q_bit=q_bit,
        power_per_bit=q_bit / tau,
        delta_area_per_bit=4 * lp2 * LN2,
        q_tot_saturated=q_tot,
        power_saturated=q_tot / tau,
        rho_Lambda=rho,
        power_density=q_tot / (V * tau),
        constants=constants,
        assumptions=(
            "unbiased record H2 = ln 2 per bit",
            "erasure against the Gibbons-Hawking temperature",
            f"N saturates the de Sitter entropy budget ({SATURATION_LABEL})",
            tau_note,
            "Lambda = 3 H^2 / c^2",
        ),
    )


def _rel(a, b):
    return abs(a - b) / abs(b)


def desitter_identity_check(report, rtol=1e-12):
    """Check the closed-form identities a report must satisfy.

    Returns ``(ok, residuals)`` with relative residuals for
    T*S = c^5/(2GH), power density = rho_Lambda/tau and N_max k_B ln2 = S.
    """
    k, G, c = report.constants.k_B, report.constants.G, report.constants.c
    H = report.hubble_rate
    residuals = {
        "TS_identity": _rel(report.T_dS * report.S_dS, c ** 5 / (2 * G * H)),
        "power_density": _rel(report.power_density, report.rho_Lambda / report.tau),
        "holographic_bits": _rel(report.N_max * k * LN2, report.S_dS),
    }
    return all(r < rtol for r in residuals.values()), residuals


def half_planck_power(constants=CODATA2018):
    """c^5 / (2G), the saturated power for tau = 1/H at any H."""
    return constants.c ** 5 / (2 * constants.G)


__all__ = [
    "CircuitQedInput",
    "CircuitQedReport",
    "DeSitterInput",
    "DeSitterReport",
    "circuit_qed_report",
    "desitter_identity_check",
    "desitter_report",
    "half_planck_power",
]
