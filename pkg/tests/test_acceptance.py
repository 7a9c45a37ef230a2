"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line.

Expected numbers marked ``oracle`` were computed independently with mpmath
at 50 digits and frozen here.
"""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from recordcost import (
    CODATA2018,
    BinModel,
    CircuitQedInput,
    CorrelationSpec,
    DeSitterInput,
    JointDistribution,
    ModeDensitySpec,
    circuit_qed_report,
    constant,
    desitter_identity_check,
    desitter_report,
    joint_entropy_exact,
    lz_entropy_rate,
    mode_density,
    plugin_entropy,
    power_min,
    simulate_multimode,
    simulate_record,
    small_tau_power_asymptote,
)
from recordcost.entropy import _h2
from recordcost.landauer import dimensional_audit, total_power_iid, total_power_joint, worst_case_power
from recordcost.record_model import HAZARD, THRESHOLD

K_B = CODATA2018.k_B


def _close(x, ref, rtol):
    return abs(x - ref) <= rtol * abs(ref)


def test_criterion_1_circuit_qed_golden_numbers(acceptance):
    cold = circuit_qed_report(CircuitQedInput())
    warm = circuit_qed_report(CircuitQedInput(T=300.0))
    checks = {
        "P_tau": _close(cold.p_click, 4.9e-2, 0.02),
        "H2_nats": _close(cold.entropy_nats, 0.195, 0.02),
        "H2_bits": _close(cold.entropy_bits, 0.281, 0.02),
        "Q_20mK": _close(cold.cost.q_min_per_bin, 5.4e-26, 0.05),
        "P_20mK": _close(cold.cost.power_min, 5.4e-20, 0.05),
        "Q_300K": _close(warm.cost.q_min_per_bin, 8.1e-22, 0.05),
        "P_300K": _close(warm.cost.power_min, 8.1e-16, 0.05),
    }
    acceptance(1, "circuit-QED golden numbers", all(checks.values()))
    assert all(checks.values()), checks
    # oracle values of the unrounded chain
    assert cold.p_click == pytest.approx(0.0491509911808777, rel=1e-12)
    assert cold.entropy_nats == pytest.approx(0.196007760113018, rel=1e-12)
    assert warm.cost.power_min == pytest.approx(8.11853753976836e-16, rel=1e-12)


def test_criterion_2_de_sitter_identities(acceptance):
    rng = np.random.default_rng(20240201)
    hubble = 10.0 ** rng.uniform(-20.0, 20.0, size=1000)
    c, G = CODATA2018.c, CODATA2018.G
    saturated = c ** 5 / (2 * G)
    worst = 0.0
    power_ok = True
    for H in hubble:
        rep = desitter_report(DeSitterInput(float(H)))
        ok, res = desitter_identity_check(rep, rtol=1e-10)
        worst = max(worst, *res.values())
        worst = max(worst, abs(rep.power_density - rep.rho_Lambda * H) / (rep.rho_Lambda * H))
        power_ok &= _close(rep.power_saturated, 1.8e52, 0.01)
        power_ok &= _close(rep.power_saturated, saturated, 1e-10)
    today = desitter_report(DeSitterInput(2.2e-18))
    in_window = 10 ** -27.5 <= today.power_density <= 10 ** -26.5
    passed = worst < 1e-10 and power_ok and in_window
    acceptance(2, f"de Sitter identities (worst residual {worst:.1e})", passed)
    assert passed
    assert today.power_density == pytest.approx(1.71153237941459e-27, rel=1e-9)


def test_criterion_3_monte_carlo_consistency(acceptance):
    p = 0.04877
    # gamma*tau chosen so the hazard law gives exactly P = 0.04877
    model = BinModel(HAZARD, -math.log1p(-p), 1.0)
    traj = constant(0.0)
    n = 10 ** 6
    sigma = math.sqrt(p * (1 - p) / n)
    within, entropies = 0, []
    for seed in range(20):
        rec = simulate_record(traj, model, n, seed)
        freq = rec.outcomes.mean()
        within += abs(freq - p) <= 3 * sigma
        entropies.append(plugin_entropy(rec).nats)
    entropy_ok = all(abs(h - 0.1949) <= 3e-3 for h in entropies)
    passed = within >= 19 and entropy_ok
    acceptance(3, f"Monte Carlo consistency ({within}/20 within 3 sigma)", passed)
    assert passed


def test_criterion_4_small_tau_model_agreement(acceptance):
    gamma, p0 = 1e6, 0.5
    taus = np.logspace(-7, -13, 7)  # gamma*tau from 1e-1 down to 1e-7
    haz = np.array([BinModel(HAZARD, gamma, t).click_prob(p0) for t in taus])
    thr = np.array([BinModel(THRESHOLD, gamma, t).click_prob(p0) for t in taus])
    diff = haz - thr
    slopes = np.diff(np.log(diff)) / np.diff(np.log(taus))
    ratio = diff / taus ** 2
    # oracle: limit p0 (1 - p0) gamma^2 / 2
    limit = p0 * (1 - p0) * gamma ** 2 / 2
    passed = bool(np.all(np.abs(slopes - 2.0) <= 0.05)) and _close(ratio[-1], limit, 1e-4)
    acceptance(4, f"hazard/threshold agree to O(tau^2) (slopes {slopes.min():.4f}..{slopes.max():.4f})", passed)
    assert passed


def test_criterion_5_log_divergence_law(acceptance):
    T, lam = 0.02, 1e4
    xs = 10.0 ** np.arange(-8, -1)
    exact = []
    fit_ok = True
    for x in xs:
        tau = x / lam
        p = -math.expm1(-x)
        pw = power_min(T, tau, _h2(p))
        exact.append(pw)
        fit_ok &= _close(pw, small_tau_power_asymptote(T, lam, tau), 0.05)
    step = K_B * T * lam * math.log(10)
    decades = np.array(exact[:-1]) - np.array(exact[1:])
    decade_ok = bool(np.all(np.abs(decades - step) <= 0.02 * step))
    passed = fit_ok and decade_ok
    acceptance(5, "small-bin power follows k_B T lam (1 - ln lam tau)", passed)
    assert passed


def test_criterion_6_subadditivity_and_compressibility(acceptance):
    p, n = 0.3, 8
    fractions = [0.0, 0.25, 0.5, 0.75, 1.0]
    h2 = _h2(p)
    exact = [joint_entropy_exact(JointDistribution.common_cause(p, n, c)).nats for c in fractions]
    monotone = all(a >= b for a, b in zip(exact, exact[1:]))
    endpoints = math.isclose(exact[0], 8 * h2, rel_tol=1e-12) and math.isclose(exact[-1], h2, rel_tol=1e-12)
    model = BinModel(HAZARD, -math.log1p(-p), 1.0)
    errors = []
    for c, ref in zip(fractions, exact):
        rec = simulate_multimode(constant(0.0), model, n, CorrelationSpec.common_cause(c), 10 ** 6, seed=6)
        errors.append(abs(lz_entropy_rate(rec).nats - ref) / ref)
    lz_ok = max(errors) <= 0.15
    passed = monotone and endpoints and lz_ok
    acceptance(6, f"subadditivity and LZ compressibility (max LZ error {max(errors):.1%})", passed)
    assert passed
    # oracle: 8 H2(0.3)
    assert exact[0] == pytest.approx(4.88691441643915, rel=1e-12)


def _property_failures(rng, n=10_000):
    failures = {}

    # entropy symmetry and concavity
    u = rng.uniform(0.0, 1.0, n)
    a, b = rng.uniform(0.0, 1.0, (2, n))
    failures["symmetry"] = sum(_h2(x) != _h2(1.0 - x) for x in rng.uniform(0.5, 1.0, n))
    failures["concavity"] = sum(
        _h2((x + y) / 2) < (_h2(x) + _h2(y)) / 2 - 1e-15 for x, y in zip(a, b)
    )

    # hazard dominates threshold
    gamma = 10.0 ** rng.uniform(-3, 9, n)
    tau = 10.0 ** rng.uniform(-12, 0, n)
    fails = 0
    for g, t, q in zip(gamma, tau, u):
        h = BinModel(HAZARD, g, t).click_prob(q)
        th = BinModel(THRESHOLD, g, t).click_prob(q)
        fails += not (0.0 <= th <= h * (1 + 1e-12) <= 1.0 + 1e-12)
    failures["dominance"] = fails

    # bound monotonicity chains
    fails = 0
    temps = 10.0 ** rng.uniform(-3, 3, (n, 2))
    ents = rng.uniform(0.0, 5.0, (n, 2))
    taus = 10.0 ** rng.uniform(-9, 0, (n, 2))
    for (t1, t2), (h1, h2), (s1, s2) in zip(temps, ents, taus):
        t1, t2 = sorted((t1, t2))
        h1, h2 = sorted((h1, h2))
        s1, s2 = sorted((s1, s2))
        fails += power_min(t1, s1, h1) > power_min(t2, s1, h1)
        fails += power_min(t1, s1, h1) > power_min(t1, s1, h2)
        fails += s1 < s2 and h1 > 0 and not power_min(t1, s1, h1) > power_min(t1, s2, h1)
    # joint <= iid <= N * worst for marginal-consistent common-cause laws
    for _ in range(n):
        nm = int(rng.integers(1, 7))
        p = float(rng.uniform(0, 1))
        c = float(rng.uniform(0, 1))
        T, t = float(10 ** rng.uniform(-3, 3)), float(10 ** rng.uniform(-9, 0))
        hj = joint_entropy_exact(JointDistribution.common_cause(p, nm, c)).nats
        j, i, w = total_power_joint(T, t, hj), total_power_iid(T, t, nm, p), nm * worst_case_power(T, t)
        fails += not (j <= i * (1 + 1e-12) and i <= w * (1 + 1e-12))
    failures["monotonicity"] = fails

    # voxel cubic scaling
    fails = 0
    for g, ell, s in zip(rng.uniform(0.1, 10, n), 10.0 ** rng.uniform(-9, 3, n), 10.0 ** rng.uniform(-3, 3, n)):
        base = mode_density(ModeDensitySpec.voxel(g, ell))
        scaled = mode_density(ModeDensitySpec.voxel(g, s * ell))
        fails += not math.isclose(scaled * s ** 3, base, rel_tol=1e-12)
    failures["voxel"] = fails

    # dimensional audit
    fails = 0
    for _ in range(n):
        lo = float(10 ** rng.uniform(3, 12))
        res = dimensional_audit(
            T=float(10 ** rng.uniform(-3, 3)),
            tau=float(10 ** rng.uniform(-9, 0)),
            entropy=float(rng.uniform(0, 5)),
            lam=float(10 ** rng.uniform(0, 6)),
            p=float(rng.uniform(0, 1)),
            n_modes=int(rng.integers(1, 10)),
            ell=float(10 ** rng.uniform(-9, 0)),
            v=float(10 ** rng.uniform(3, 8)),
            omega_min=lo,
            omega_max=lo * float(rng.uniform(1.01, 100)),
        )
        fails += not all(ok for ok, _ in res.values())
    failures["dimensional_audit"] = fails
    return failures


def test_criterion_7_property_suites(acceptance):
    failures = _property_failures(np.random.default_rng(7))
    passed = not any(failures.values())
    acceptance(7, f"property suites, 1e4 cases each ({sum(failures.values())} failures)", passed)
    assert passed, failures


def _run(args, cwd):
    proc = subprocess.run(
        [sys.executable, "-m", "recordcost", *args], capture_output=True, cwd=cwd, check=False
    )
    return proc.returncode, proc.stdout


def test_criterion_8_cli_determinism(acceptance, tmp_path):
    commands = {
        "bound": ["bound", "--gamma", "5.04e6", "--tau", "1e-6", "--p0", "0.99", "--temperature", "0.02"],
        "sweep": ["sweep", "--variable", "tau", "--start", "1e-9", "--stop", "1e-3", "--points", "25",
                  "--spacing", "log", "--gamma", "1e6", "--p0", "0.5", "--output", "sweep.csv"],
        "simulate": ["simulate", "--modes", "4", "--bins", "20000", "--corr", "0.5", "--gamma", "1e6",
                     "--tau", "1e-6", "--p0", "0.7", "--seed", "42", "--out", "rec.bin", "--csv", "rec.csv"],
        "simulate-relax": ["simulate", "--bins", "5000", "--gamma", "1e6", "--tau", "1e-6", "--p0", "0.2",
                           "--p0-final", "0.95", "--rate", "1e3", "--seed", "7", "--out", "relax.bin"],
        "cqed": ["cqed"],
        "cosmo": ["cosmo", "--hubble", "2.2e-18"],
        "constants": ["constants"],
    }
    outputs = ["sweep.csv", "rec.bin", "rec.csv", "relax.bin"]
    runs = []
    for trial in range(2):
        d = tmp_path / f"run{trial}"
        d.mkdir()
        stdout = {name: _run(args, d) for name, args in commands.items()}
        files = {f: (d / f).read_bytes() for f in outputs}
        # output paths are echoed in stdout; they are relative so runs compare equal
        runs.append((stdout, files))
    codes_ok = all(code == 0 for code, _ in runs[0][0].values())
    passed = codes_ok and runs[0] == runs[1]
    acceptance(8, "CLI reruns are byte-identical", passed)
    assert passed
    summary = json.loads(runs[0][0]["simulate"][1])
    assert summary["record"]["seed"] == 42
