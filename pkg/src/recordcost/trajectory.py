"""Vacuum-occupation signals p0(t) presented to the detector.

A trajectory is an immutable callable returning the probability that the
monitored mode is in its ground state at time ``t`` (seconds). The click
model only ever reads it at bin starts, see :func:`sample_at_bin_starts`.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from ._validation import (
    DomainError,
    check_count,
    check_finite,
    check_nonnegative,
    check_positive,
    check_probability,
)


class Trajectory:
    """Base class; subclasses implement :meth:`eval`."""

    kind = "abstract"
    domain = (-math.inf, math.inf)

    def eval(self, t):
        raise NotImplementedError

    def __call__(self, t):
        return self.eval(t)

    def eval_many(self, times):
        return np.array([self.eval(float(t)) for t in np.asarray(times, dtype=float)])

    def to_dict(self):
        raise NotImplementedError

    @property
    def is_stationary(self):
        return False


@dataclass(frozen=True)
class ConstantTrajectory(Trajectory):
    p0: float
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "p0", check_probability(self.p0, "p0"))

    def eval(self, t):
        return self.p0

    def eval_many(self, times):
        return np.full(np.shape(times), self.p0, dtype=float)

    @property
    def is_stationary(self):
        return True

    def to_dict(self):
        return {"kind": self.kind, "p0": self.p0}


@dataclass(frozen=True)
class ExponentialRelaxation(Trajectory):
    """p0(t) = p0_final + (p0_init - p0_final) * exp(-rate * t)."""

    p0_init: float
    p0_final: float
    rate: float
    kind = "exponential-relaxation"

    def __post_init__(self):
        object.__setattr__(self, "p0_init", check_probability(self.p0_init, "p0_init"))
        object.__setattr__(self, "p0_final", check_probability(self.p0_final, "p0_final"))
        object.__setattr__(self, "rate", check_nonnegative(self.rate, "rate"))

    def eval(self, t):
        t = check_finite(t, "t")
        v = self.p0_final + (self.p0_init - self.p0_final) * math.exp(-self.rate * t)
        # convex combination; clamp only guards the last ulp
        return min(1.0, max(0.0, v))

    @property
    def is_stationary(self):
        return self.rate == 0.0 or self.p0_init == self.p0_final

    def to_dict(self):
        return {
            "kind": self.kind,
            "p0_init": self.p0_init,
            "p0_final": self.p0_final,
            "rate": self.rate,
        }


@dataclass(frozen=True)
class TabulatedTrajectory(Trajectory):
    """Piecewise-linear interpolation of (t, p0) samples."""

    times: tuple
    values: tuple
    kind = "tabulated"

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        values = tuple(check_probability(p, "p0") for p in self.values)
        if len(times) != len(values):
            raise DomainError("times and values differ in length")
        if len(times) < 2:
            raise DomainError("a tabulated trajectory needs at least 2 samples")
        if not all(math.isfinite(t) for t in times):
            raise DomainError("sample times must be finite")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise DomainError("sample times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def domain(self):
        return (self.times[0], self.times[-1])

    def _check_domain(self, t):
        lo, hi = self.domain
        if np.any((t < lo) | (t > hi)):
            raise DomainError(f"evaluation time outside tabulated domain [{lo}, {hi}]")

    def eval(self, t):
        t = check_finite(t, "t")
        self._check_domain(np.asarray(t))
        return float(np.clip(np.interp(t, self.times, self.values), 0.0, 1.0))

    def eval_many(self, times):
        t = np.asarray(times, dtype=float)
        self._check_domain(t)
        return np.clip(np.interp(t, self.times, self.values), 0.0, 1.0)

    @property
    def is_stationary(self):
        return len(set(self.values)) == 1

    def to_dict(self):
        return {"kind": self.kind, "samples": [list(s) for s in zip(self.times, self.values)]}


def constant(p0):
    return ConstantTrajectory(p0)


def exponential_relaxation(p0_init, p0_final, rate):
    return ExponentialRelaxation(p0_init, p0_final, rate)


def tabulated(samples):
    """Build a trajectory from a sequence of ``(t_seconds, p0)`` pairs."""
    samples = list(samples)
    if any(len(s) != 2 for s in samples):
        raise DomainError("each sample must be a (t, p0) pair")
    return TabulatedTrajectory(tuple(s[0] for s in samples), tuple(s[1] for s in samples))


def load_csv(path):
    """Read a two-column ``t_seconds, p0`` CSV into a tabulated trajectory.

    Lines starting with ``#`` and blank lines are skipped. A first row that
    does not parse as numbers is treated as a header.
    """
    samples = []
    with open(path, newline="") as fh:
        rows = csv.reader(line for line in fh if line.strip() and not line.lstrip().startswith("#"))
        for i, row in enumerate(rows):
            if len(row) < 2:
                raise DomainError(f"{path}: row {i + 1} needs two columns")
            try:
                t, p = (float(x) for x in row[:2])
            except ValueError:
                if i == 0 and not samples:
                    continue
                raise DomainError(f"{path}: row {i + 1} is not numeric: {row!r}")
            samples.append((t, p))
    return tabulated(samples)


def bin_start_times(tau, n_bins, t0=0.0):
    tau = check_positive(tau, "tau")
    n_bins = check_count(n_bins, "n_bins")
    t0 = check_finite(t0, "t0")
    return t0 + np.arange(n_bins, dtype=float) * tau


def sample_at_bin_starts(traj, tau, n_bins, t0=0.0):
    """Return p0(t0 + k*tau) for k = 0 .. n_bins-1 as a float array.

    For tabulated input every bin, including the end of the last one, has
    to lie inside the table.
    """
    times = bin_start_times(tau, n_bins, t0)
    if isinstance(traj, TabulatedTrajectory):
        lo, hi = traj.domain
        end = times[-1] + float(tau)
        # float accumulation in t0 + n*tau may overshoot by an ulp
        slack = 1e-12 * max(abs(hi), abs(lo), float(tau))
        if times[0] < lo or end - hi > slack:
            raise DomainError(
                f"bins span [{times[0]}, {end}] but table covers [{lo}, {hi}]"
            )
        times = np.minimum(times, hi)
    return traj.eval_many(times)
