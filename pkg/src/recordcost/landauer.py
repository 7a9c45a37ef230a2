"""Landauer lower bounds on the heat and power of resetting click records.

Every bound is ``k_B * T * (entropy in nats)`` per bin, divided by ``tau``
for power. These are operational lower bounds; nothing here claims that an
erasure protocol reaching them exists.

The formulas only use arithmetic operators and ``math.log``, so they accept
either floats or :class:`~recordcost.constants.Quantity` arguments. The
dimensional audit relies on this and re-runs the same functions with units
attached.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ._validation import (
    DomainError,
    check_count,
    check_nonnegative,
    check_positive,
    check_probability,
    magnitude,
)
from .constants import (
    CODATA2018,
    JOULE,
    KELVIN,
    METER,
    PER_VOLUME,
    POWER_DENSITY,
    RATE,
    SECOND,
    SPECTRAL_MODE_DENSITY,
    SPEED,
    WATT,
    Quantity,
)
from .entropy import LN2, binary_entropy_nats


class GridRefinementWarning(UserWarning):
    """A tabulated density of states looks under-resolved."""


def _nats(entropy):
    h = getattr(entropy, "nats", entropy)
    check_nonnegative(h, "entropy")
    return h


def _temperature(T):
    check_nonnegative(T, "T")
    return T


def _tau(tau):
    check_positive(tau, "tau")
    return tau


def q_min_per_bin(T, entropy, constants=CODATA2018):
    """Minimal average heat per bin, k_B T H (J)."""
    return constants.k_B * _temperature(T) * _nats(entropy)


def power_min(T, tau, entropy, constants=CODATA2018):
    """Minimal dissipation power k_B T H / tau (W)."""
    return q_min_per_bin(T, entropy, constants) / _tau(tau)


def worst_case_power(T, tau, constants=CODATA2018):
    """Power when every bin is erased as a full unbiased bit."""
    return constants.k_B * _temperature(T) * LN2 / _tau(tau)


def small_tau_power_asymptote(T, lam, tau, constants=CODATA2018):
    """Small-bin form k_B T lam (1 - ln(lam tau)); valid for 0 < lam*tau < 1."""
    x = lam * _tau(tau)
    xv = float(magnitude(x))
    if not 0.0 < xv < 1.0:
        raise DomainError(f"lambda*tau must lie in (0, 1), got {xv!r}")
    return constants.k_B * _temperature(T) * lam * (1.0 - math.log(x))


def total_power_iid(T, tau, n_modes, p, constants=CODATA2018):
    """N identical independent modes, each clicking with probability ``p``."""
    n = check_count(n_modes, "n_modes")
    h = binary_entropy_nats(check_probability(p, "p"))
    return n * power_min(T, tau, h, constants)


def total_power_joint(T, tau, joint_entropy, constants=CODATA2018):
    """Power bound from the joint entropy of the N-bit per-bin outcome."""
    return power_min(T, tau, joint_entropy, constants)


def inefficiency_factor(entropy, n_modes=1):
    """Worst-case over optimal cost, N ln2 / H; None for a deterministic record."""
    h = float(_nats(entropy))
    return None if h == 0.0 else n_modes * LN2 / h


@dataclass(frozen=True)
class CostReport:
    q_min_per_bin: float
    power_min: float
    worst_case_power: float
    inefficiency_factor: float | None
    inputs_echo: dict
    bound: str = "lower bound; achievability not claimed"

    def to_dict(self):
        return {
            "q_min_per_bin_J": self.q_min_per_bin,
            "power_min_W": self.power_min,
            "worst_case_power_W": self.worst_case_power,
            "inefficiency_factor": self.inefficiency_factor,
            "inputs": dict(self.inputs_echo),
            "bound": self.bound,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def cost_report(T, tau, entropy, n_modes=1, constants=CODATA2018):
    """Heat, power and worst-case power for a record of ``n_modes`` bits per bin.

    ``entropy`` is the entropy of the whole per-bin outcome in nats.
    """
    n = check_count(n_modes, "n_modes")
    h = float(_nats(entropy))
    return CostReport(
        q_min_per_bin=q_min_per_bin(T, h, constants),
        power_min=power_min(T, tau, h, constants),
        worst_case_power=n * worst_case_power(T, tau, constants),
        inefficiency_factor=inefficiency_factor(h, n),
        inputs_echo={"T_K": float(T), "tau_s": float(tau), "entropy_nats": h, "N": n},
    )


# mode densities

PHENOMENOLOGICAL = "phenomenological"
VOXEL = "voxel"
SPECTRAL_GENERAL = "spectral-general"
SPECTRAL_LINEAR = "spectral-linear"
NARROWBAND = "spectral-narrowband"
METHODS = (PHENOMENOLOGICAL, VOXEL, SPECTRAL_GENERAL, SPECTRAL_LINEAR, NARROWBAND)


@dataclass(frozen=True, eq=False)
class ModeDensitySpec:
    """How the number of monitored modes per unit volume is fixed.

    Use the constructors rather than filling fields by hand. Spectral
    densities ``D(omega)`` are per unit volume and per unit angular
    frequency (s/m^3).
    """

    method: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"method must be one of {METHODS}, got {self.method!r}")
        p = self.params
        if self.method == PHENOMENOLOGICAL:
            check_nonnegative(p["nu"], "nu")
        elif self.method == VOXEL:
            check_nonnegative(p["g"], "g")
            check_positive(p["ell"], "ell")
        elif self.method == SPECTRAL_LINEAR:
            check_nonnegative(p["g"], "g")
            check_positive(p["v"], "v")
            self._check_band(p["omega_min"], p["omega_max"])
        elif self.method == NARROWBAND:
            check_nonnegative(p["D0"], "D0")
            check_positive(p["delta_omega"], "delta_omega")
        else:
            omega, dos = p["omega"], p["D"]
            if len(omega) == 0:
                raise DomainError("empty D(omega) table")
            if len(omega) != len(dos) or len(omega) < 2:
                raise DomainError("D(omega) table needs >= 2 matching (omega, D) points")
            if np.any(np.diff(omega) <= 0):
                raise DomainError("omega grid must be strictly increasing")
            if np.any(np.asarray(dos) < 0):
                raise DomainError("D(omega) must be >= 0")
            self._check_band(p["omega_min"], p["omega_max"])
            if p["omega_min"] < omega[0] or p["omega_max"] > omega[-1]:
                raise DomainError("integration band extends beyond the D(omega) table")

    @staticmethod
    def _check_band(lo, hi):
        check_nonnegative(lo, "omega_min")
        check_positive(hi, "omega_max")
        if not magnitude(hi) > magnitude(lo):
            raise DomainError("omega_max must exceed omega_min")

    @classmethod
    def phenomenological(cls, nu):
        return cls(PHENOMENOLOGICAL, {"nu": nu})

    @classmethod
    def voxel(cls, g, ell):
        return cls(VOXEL, {"g": g, "ell": ell})

    @classmethod
    def spectral_linear(cls, g, v, omega_min, omega_max):
        return cls(SPECTRAL_LINEAR, {"g": g, "v": v, "omega_min": omega_min, "omega_max": omega_max})

    @classmethod
    def narrowband(cls, D0, delta_omega):
        return cls(NARROWBAND, {"D0": D0, "delta_omega": delta_omega})

    @classmethod
    def spectral_general(cls, omega, D, omega_min=None, omega_max=None):
        omega = np.asarray(omega, dtype=float)
        D = np.asarray(D, dtype=float)
        if omega.size == 0:
            raise DomainError("empty D(omega) table")
        return cls(
            SPECTRAL_GENERAL,
            {
                "omega": omega,
                "D": D,
                "omega_min": float(omega[0] if omega_min is None else omega_min),
                "omega_max": float(omega[-1] if omega_max is None else omega_max),
            },
        )


def linear_dispersion_dos(omega, g, v):
    """Modes per volume per angular frequency for omega = v|k| in 3D."""
    return g * omega ** 2 / (2 * math.pi ** 2 * v ** 3)


def bandwidth_from_tau(tau):
    """Order-of-magnitude spectral width 1/tau for a bin of length tau.

    Never applied implicitly; pass the result to
    :meth:`ModeDensitySpec.narrowband` if that estimate is wanted.
    """
    return 1.0 / _tau(tau)


def _band_grid(omega, dos, lo, hi):
    inside = (omega > lo) & (omega < hi)
    w = np.concatenate([[lo], omega[inside], [hi]])
    d = np.concatenate([[np.interp(lo, omega, dos)], dos[inside], [np.interp(hi, omega, dos)]])
    return w, d


def _trapezoid_with_check(omega, dos, lo, hi, rtol):
    w, d = _band_grid(np.asarray(omega, float), np.asarray(dos, float), lo, hi)
    fine = float(np.trapezoid(d, w))
    if len(w) >= 5:
        keep = np.r_[0:len(w):2]
        if keep[-1] != len(w) - 1:
            keep = np.append(keep, len(w) - 1)
        coarse = float(np.trapezoid(d[keep], w[keep]))
        if fine > 0 and abs(fine - coarse) > rtol * fine:
            warnings.warn(
                f"halving the D(omega) grid changes the mode density by "
                f"{abs(fine - coarse) / fine:.2e} (relative); refine the table",
                GridRefinementWarning,
                stacklevel=3,
            )
    return fine


def mode_density(spec, refinement_rtol=1e-3):
    """Modes per unit volume (1/m^3) for the chosen cutoff.

    Voxel counts use g/ell^3 without boundary corrections. Tabulated
    spectra are integrated with the trapezoid rule on the given grid only;
    a :class:`GridRefinementWarning` is issued when dropping every other
    grid point moves the result by more than ``refinement_rtol``.
    """
    p = spec.params
    if spec.method == PHENOMENOLOGICAL:
        return p["nu"]
    if spec.method == VOXEL:
        return p["g"] / p["ell"] ** 3
    if spec.method == SPECTRAL_LINEAR:
        return p["g"] * (p["omega_max"] ** 3 - p["omega_min"] ** 3) / (6 * math.pi ** 2 * p["v"] ** 3)
    if spec.method == NARROWBAND:
        return p["D0"] * p["delta_omega"]
    return _trapezoid_with_check(p["omega"], p["D"], p["omega_min"], p["omega_max"], refinement_rtol)


def power_density(T, tau, entropy_per_mode, spec, constants=CODATA2018):
    """Power bound per unit volume, nu * k_B T H / tau (W/m^3)."""
    return mode_density(spec) * power_min(T, tau, entropy_per_mode, constants)


def dimensional_audit(T, tau, entropy, lam, p, n_modes, ell, v, omega_min, omega_max, constants=CODATA2018):
    """Re-evaluate each bound with unit-tagged inputs and check its dimension.

    Returns ``{name: (ok, value)}``; ``ok`` is False when the result has the
    wrong dimension or a dimension error was raised on the way.
    """
    qc = constants.as_quantities()
    qT = Quantity(T, KELVIN)
    qtau = Quantity(tau, SECOND)
    qlam = Quantity(lam, RATE)
    qell = Quantity(ell, METER)
    qv = Quantity(v, SPEED)
    qlo, qhi = Quantity(omega_min, RATE), Quantity(omega_max, RATE)
    checks = {
        "q_min_per_bin": (lambda: q_min_per_bin(qT, entropy, qc), JOULE),
        "power_min": (lambda: power_min(qT, qtau, entropy, qc), WATT),
        "worst_case_power": (lambda: worst_case_power(qT, qtau, qc), WATT),
        "total_power_iid": (lambda: total_power_iid(qT, qtau, n_modes, p, qc), WATT),
        "total_power_joint": (lambda: total_power_joint(qT, qtau, entropy, qc), WATT),
        "small_tau_power_asymptote": (
            lambda: small_tau_power_asymptote(qT, qlam, Quantity(min(tau, 0.5 / lam), SECOND), qc),
            WATT,
        ),
        "linear_dispersion_dos": (lambda: linear_dispersion_dos(qhi, 2, qv), SPECTRAL_MODE_DENSITY),
        "mode_density_voxel": (lambda: mode_density(ModeDensitySpec.voxel(2, qell)), PER_VOLUME),
        "mode_density_linear": (
            lambda: mode_density(ModeDensitySpec.spectral_linear(2, qv, qlo, qhi)),
            PER_VOLUME,
        ),
        "mode_density_narrowband": (
            lambda: mode_density(
                ModeDensitySpec.narrowband(linear_dispersion_dos(qhi, 2, qv), qhi - qlo)
            ),
            PER_VOLUME,
        ),
        "power_density": (
            lambda: power_density(qT, qtau, entropy, ModeDensitySpec.voxel(1, qell), qc),
            POWER_DENSITY,
        ),
    }
    out = {}
    for name, (fn, dim) in checks.items():
        try:
            q = fn()
            out[name] = (isinstance(q, Quantity) and q.dim == dim, q)
        except TypeError as exc:
            out[name] = (False, exc)
    return out


__all__ = [
    "CostReport",
    "GridRefinementWarning",
    "ModeDensitySpec",
    "bandwidth_from_tau",
    "cost_report",
    "dimensional_audit",
    "inefficiency_factor",
    "linear_dispersion_dos",
    "mode_density",
    "power_density",
    "power_min",
    "q_min_per_bin",
    "small_tau_power_asymptote",
    "total_power_iid",
    "total_power_joint",
    "worst_case_power",
]
