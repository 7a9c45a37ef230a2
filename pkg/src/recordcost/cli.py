"""Command-line interface.

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 ok, 2 invalid
input, 3 I/O failure.

Config files (``--config FILE``, given before the subcommand) use a small
key = value grammar::

    # comment
    temperature = 0.02        # applies to every command that has the flag
    [simulate]
    seed = 7                  # applies to "simulate" only

Keys are flag names without the leading dashes; ``-`` and ``_`` are
interchangeable. Values may be quoted. Flags on the command line override
the file.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from ._validation import DomainError, check_count
from .constants import CODATA2018
from .entropy import (
    MAX_EXACT_MODES,
    JointDistribution,
    binary_entropy,
    joint_entropy_exact,
    lz_entropy_rate,
    plugin_entropy,
)
from .landauer import cost_report, power_min, total_power_joint, worst_case_power
from .record_model import (
    LAWS,
    BinModel,
    CorrelationSpec,
    bin_probabilities,
    simulate_multimode,
)
from .scenarios import CircuitQedInput, DeSitterInput, circuit_qed_report, desitter_report
from .trajectory import constant, exponential_relaxation, load_csv

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 2, 3

SWEEP_VARIABLES = ("p0", "tau", "gamma", "gamma_tau", "temperature")
SWEEP_COLUMNS = (
    "P_tau_hazard",
    "P_tau_threshold",
    "H2_nats",
    "H2_bits",
    "power_min_W",
    "worst_case_W",
)


class ConfigError(DomainError):
    pass


class IOFailure(Exception):
    pass


def parse_config(text):
    """Parse the key = value config grammar into ``{section: {key: value}}``.

    Section ``""`` holds keys that appear before any ``[section]`` header.
    """
    sections = {"": {}}
    current = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip()
            sections.setdefault(current, {})
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if len(value) >= 2 and value[0] == value[-1] and value[0] in "'\"":
            value = value[1:-1]
        if not key:
            raise ConfigError(f"config line {lineno}: empty key")
        sections[current][key.replace("-", "_")] = value
    return sections


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        check_count(self.points, "points", minimum=2)
        if not self.start < self.stop:
            raise DomainError("sweep start must be < stop")
        if self.spacing not in ("linear", "log"):
            raise DomainError("spacing must be linear or log")
        if self.spacing == "log" and not self.start > 0:
            raise DomainError("log spacing needs start > 0")

    def grid(self):
        if self.spacing == "log":
            g = np.geomspace(self.start, self.stop, self.points)
        else:
            g = np.linspace(self.start, self.stop, self.points)
        # pin the endpoints exactly
        g[0], g[-1] = self.start, self.stop
        return g


def sweep_rows(spec, fixed):
    """Yield one result row per grid point of ``spec``.

    ``fixed`` holds gamma, tau, p0, temperature, law and optionally
    gamma_tau. A gamma_tau value (fixed or swept) sets gamma = gamma_tau / tau.
    """
    for value in spec.grid():
        params = dict(fixed)
        params[spec.variable] = float(value)
        tau = params["tau"]
        gamma = params.get("gamma")
        if params.get("gamma_tau") is not None and spec.variable != "gamma":
            gamma = params["gamma_tau"] / tau
        haz = BinModel("hazard", gamma, tau)
        thr = BinModel("threshold", gamma, tau)
        p_h = haz.click_prob(params["p0"])
        p_t = thr.click_prob(params["p0"])
        h = binary_entropy(p_h if params["law"] == "hazard" else p_t)
        T = params["temperature"]
        yield [
            float(value),
            p_h,
            p_t,
            h.nats,
            h.bits,
            power_min(T, tau, h.nats),
            worst_case_power(T, tau),
        ]


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise DomainError(f"missing required option(s): {flags}")


def cmd_bound(args):
    _require(args, "gamma", "tau", "p0", "temperature")
    model = BinModel(args.law, args.gamma, args.tau)
    p = model.click_prob(args.p0)
    h = binary_entropy(p)
    report = cost_report(args.temperature, args.tau, args.modes * h.nats, args.modes)
    out = {
        "command": "bound",
        "model": model.to_dict(),
        "p0": args.p0,
        "P_tau": p,
        "H2_nats": h.nats,
        "H2_bits": h.bits,
    }
    out.update(report.to_dict())
    _emit(out)


def cmd_sweep(args):
    _require(args, "variable", "start", "stop", "points", "output")
    spec = SweepSpec(args.variable, args.start, args.stop, args.points, args.spacing)
    fixed = {
        "gamma": args.gamma,
        "tau": args.tau,
        "p0": args.p0,
        "temperature": args.temperature,
        "gamma_tau": args.gamma_tau,
        "law": args.law,
    }
    fixed.pop(spec.variable)
    needed = {"tau", "p0", "temperature"} - {spec.variable}
    if spec.variable not in ("gamma", "gamma_tau") and args.gamma_tau is None:
        needed.add("gamma")
    missing = sorted(k for k in needed if fixed.get(k) is None)
    if missing:
        raise DomainError("missing fixed parameter(s): " + ", ".join("--" + k.replace("_", "-") for k in missing))
    rows = list(sweep_rows(spec, fixed))
    for row in rows:
        if not all(math.isfinite(x) for x in row):
            raise DomainError("sweep produced a non-finite value")
    try:
        with open(args.output, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([spec.variable, *SWEEP_COLUMNS])
            for row in rows:
                w.writerow([repr(x) for x in row])
    except OSError as exc:
        raise IOFailure(f"cannot write {args.output}: {exc.strerror or exc}") from exc
    _emit(
        {
            "command": "sweep",
            "variable": spec.variable,
            "spacing": spec.spacing,
            "rows": len(rows),
            "columns": [spec.variable, *SWEEP_COLUMNS],
            "output": args.output,
            "law": args.law,
        }
    )


def _trajectory(args):
    if args.trajectory_csv:
        try:
            return load_csv(args.trajectory_csv)
        except OSError as exc:
            raise IOFailure(f"cannot read {args.trajectory_csv}: {exc.strerror or exc}") from exc
    _require(args, "p0")
    if args.p0_final is not None or args.rate is not None:
        _require(args, "p0_final", "rate")
        return exponential_relaxation(args.p0, args.p0_final, args.rate)
    return constant(args.p0)


def cmd_simulate(args):
    if args.seed is None:
        raise DomainError("--seed is mandatory for simulate")
    _require(args, "gamma", "tau", "out")
    traj = _trajectory(args)
    model = BinModel(args.law, args.gamma, args.tau)
    corr = CorrelationSpec.common_cause(args.corr)
    record = simulate_multimode(traj, model, args.modes, corr, args.bins, args.seed, args.t0)
    try:
        record.save(args.out)
        if args.csv:
            with open(args.csv, "w", newline="") as fh:
                fh.write(record.to_csv())
    except OSError as exc:
        raise IOFailure(f"cannot write record: {exc.strerror or exc}") from exc

    estimates = {"lz": lz_entropy_rate(record).to_dict()}
    if record.n_modes <= MAX_EXACT_MODES:
        estimates["plugin"] = plugin_entropy(record).to_dict()
        estimates["miller_madow"] = plugin_entropy(record, "miller-madow").to_dict()
    joint_source = "plugin" if "plugin" in estimates else "lz"
    joint_nats = estimates[joint_source]["nats"]

    probs = bin_probabilities(traj, model, args.bins, args.t0)
    # time-averaged single-mode entropy; unique() keeps stationary runs cheap
    values, counts = np.unique(probs, return_counts=True)
    per_mode = float(sum(binary_entropy(float(p)).nats * n for p, n in zip(values, counts)) / len(probs))
    T = args.temperature
    out = {
        "command": "simulate",
        "record": record.metadata(),
        "output": args.out,
        "estimates": estimates,
        "power": {
            "temperature_K": T,
            "joint_entropy_source": joint_source,
            "total_power_joint_W": total_power_joint(T, args.tau, joint_nats),
            "total_power_iid_W": args.modes * power_min(T, args.tau, per_mode),
            "bound": "lower bound; achievability not claimed",
        },
    }
    if traj.is_stationary and record.n_modes <= MAX_EXACT_MODES:
        dist = JointDistribution.common_cause(float(probs[0]), record.n_modes, args.corr)
        exact = joint_entropy_exact(dist).nats
        out["exact_joint_entropy_nats"] = exact
        out["power"]["exact_joint_power_W"] = total_power_joint(T, args.tau, exact)
    _emit(out)


def cmd_cqed(args):
    inp = CircuitQedInput(args.kappa, args.eta, args.tau, args.p0, args.temperature)
    _emit(circuit_qed_report(inp).to_dict())


def cmd_cosmo(args):
    _require(args, "hubble")
    _emit(desitter_report(DeSitterInput(args.hubble), args.tau).to_dict())


def cmd_constants(args):
    _emit(CODATA2018.to_dict())


def _add_model_flags(p, required_note=""):
    p.add_argument("--gamma", type=float, help="measurement strength (1/s)" + required_note)
    p.add_argument("--tau", type=float, help="bin duration (s)" + required_note)
    p.add_argument("--p0", type=float, help="vacuum probability" + required_note)
    p.add_argument("--law", choices=LAWS, default="hazard", help="click law (default hazard)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="recordcost",
        description="Landauer cost bounds for click/no-click vacuum-test records.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="key = value defaults file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="single-mode heat and power bounds")
    _add_model_flags(p, "; required")
    p.add_argument("--temperature", type=float, help="bath temperature (K); required")
    p.add_argument("--modes", type=int, default=1, help="independent identical modes")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="tabulate entropy and power over one parameter (CSV)")
    p.add_argument("--variable", choices=SWEEP_VARIABLES)
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    _add_model_flags(p)
    p.add_argument("--gamma-tau", type=float, help="fix gamma*tau instead of gamma")
    p.add_argument("--temperature", type=float, default=0.02)
    p.add_argument("--output", help="CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="simulate a record and estimate its entropy")
    p.add_argument("--modes", type=int, default=1)
    p.add_argument("--bins", type=int, default=100000)
    p.add_argument("--seed", type=int, help="mandatory; no implicit entropy source")
    p.add_argument("--corr", type=float, default=0.0, help="common-cause fraction c")
    _add_model_flags(p)
    p.add_argument("--p0-final", type=float, help="relaxation target (with --rate)")
    p.add_argument("--rate", type=float, help="relaxation rate (1/s)")
    p.add_argument("--trajectory-csv", help="two-column t_seconds,p0 table")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--temperature", type=float, default=0.02)
    p.add_argument("--out", help="binary record output path")
    p.add_argument("--csv", help="optional CSV copy of the record")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("cqed", help="circuit-QED monitoring report")
    p.add_argument("--kappa", type=float, default=6.3e6)
    p.add_argument("--eta", type=float, default=0.8)
    p.add_argument("--tau", type=float, default=1e-6)
    p.add_argument("--p0", type=float, default=0.99)
    p.add_argument("--temperature", type=float, default=0.02)
    p.set_defaults(func=cmd_cqed)

    p = sub.add_parser("cosmo", help="de Sitter horizon report")
    p.add_argument("--hubble", type=float, help="Hubble rate H (1/s)")
    p.add_argument("--tau", type=float, help="bin duration (s); default 1/H")
    p.set_defaults(func=cmd_cosmo)

    p = sub.add_parser("constants", help="print the constant set as JSON")
    p.set_defaults(func=cmd_constants)
    return parser


def _apply_config(parser, path):
    try:
        with open(path) as fh:
            sections = parse_config(fh.read())
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc.strerror or exc}") from exc
    subparsers = next(
        a for a in parser._actions if isinstance(a, argparse._SubParsersAction)
    ).choices
    known = {name: {a.dest for a in sp._actions} for name, sp in subparsers.items()}
    for section, values in sections.items():
        if section and section not in subparsers:
            raise ConfigError(f"config section [{section}] is not a command")
        targets = [section] if section else list(subparsers)
        for key in values:
            if not any(key in known[t] for t in targets):
                raise ConfigError(f"config key {key!r} matches no option")
        for t in targets:
            subparsers[t].set_defaults(**{k: v for k, v in values.items() if k in known[t]})


def _coerce_defaults(args, parser):
    # argparse applies ``type`` to string defaults only for some actions
    sp = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for action in sp.choices[args.command]._actions:
        v = getattr(args, action.dest, None)
        if isinstance(v, str) and action.type is not None and action.type is not str:
            try:
                setattr(args, action.dest, action.type(v))
            except ValueError as exc:
                raise ConfigError(f"bad value for {action.dest}: {v!r}") from exc


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        cfg = _config_path(argv)
        if cfg:
            _apply_config(parser, cfg)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_INVALID
        _coerce_defaults(args, parser)
        args.func(args)
    except IOFailure as exc:
        print(f"recordcost: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DomainError, ValueError, TypeError, KeyError) as exc:
        print(f"recordcost: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


def _config_path(argv):
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
        if not a.startswith("-"):
            break
    return None


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
