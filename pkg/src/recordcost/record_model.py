"""Per-bin click probabilities and seeded click/no-click records.

Two click laws are provided. The hazard law treats clicks as a Poisson
process whose rate ``gamma * (1 - p0)`` is frozen at the start of the bin,
giving ``1 - exp(-gamma (1 - p0) tau)``. It can exceed ``1 - p0`` once
``gamma * tau`` is of order one, which is intended: it parametrizes record
statistics, not a single-shot threshold measurement. The threshold law
``(1 - p0)(1 - exp(-gamma tau))`` never exceeds ``1 - p0``. The two agree to
first order in ``tau``.

Random draws come from Philox4x64-10, a counter-based generator, so that
every uniform is addressable by (seed, mode, purpose, bin). Records are
therefore identical regardless of how generation is chunked or scheduled.
"""

from __future__ import annotations

import csv
import io
import struct
from dataclasses import dataclass, field

import numpy as np

from ._validation import (
    DomainError,
    check_binary_array,
    check_count,
    check_nonnegative,
    check_positive,
    check_probability,
    check_probability_array,
)
from .trajectory import sample_at_bin_starts

HAZARD = "hazard"
THRESHOLD = "threshold"
LAWS = (HAZARD, THRESHOLD)

INDEPENDENT = "independent"
COMMON_CAUSE = "common-cause"

# stream purposes
_OWN, _LATENT, _SELECT = 0, 1, 2
_SEED_LIMIT = 1 << 64

PROVENANCE = (
    "philox4x64-10 via numpy.random.Philox; "
    "key = seed + ((mode + (purpose << 32)) << 64), purpose 0=own 1=latent 2=select; "
    "bin b uses word b % 4 of counter block b // 4; "
    "u = (word >> 11) * 2**-53; click iff u < P"
)


@dataclass(frozen=True)
class BinModel:
    """Click law plus measurement strength ``gamma`` (1/s) and bin width ``tau`` (s)."""

    law: str = HAZARD
    gamma: float = 1.0
    tau: float = 1.0

    def __post_init__(self):
        if self.law not in LAWS:
            raise DomainError(f"law must be one of {LAWS}, got {self.law!r}")
        object.__setattr__(self, "gamma", check_nonnegative(self.gamma, "gamma"))
        object.__setattr__(self, "tau", check_positive(self.tau, "tau"))

    def click_prob(self, p0):
        if self.law == HAZARD:
            return hazard_click_prob(self, p0)
        return threshold_click_prob(self, p0)

    def click_probs(self, p0):
        """Vectorized :meth:`click_prob` over an array of vacuum probabilities."""
        p0 = check_probability_array(p0, "p0")
        if self.law == HAZARD:
            return -np.expm1(-(self.gamma * (1.0 - p0) * self.tau))
        return (1.0 - p0) * -np.expm1(-(self.gamma * self.tau))

    def to_dict(self):
        return {"law": self.law, "gamma": self.gamma, "tau": self.tau}


def click_rate(gamma, p0):
    """Instantaneous Poisson click rate gamma * (1 - p0), in 1/s."""
    gamma = check_nonnegative(gamma, "gamma")
    p0 = check_probability(p0, "p0")
    return gamma * (1.0 - p0)


def hazard_click_prob(model, p0):
    # expm1 keeps full relative precision for arguments down to 1e-300
    x = click_rate(model.gamma, p0) * model.tau
    return float(-np.expm1(-x))


def threshold_click_prob(model, p0):
    p0 = check_probability(p0, "p0")
    return (1.0 - p0) * float(-np.expm1(-(model.gamma * model.tau)))


def bin_probabilities(traj, model, n_bins, t0=0.0):
    """Click probability of each bin, with p0 read at the bin start."""
    p0 = sample_at_bin_starts(traj, model.tau, n_bins, t0)
    if traj.is_stationary:
        return np.full(len(p0), model.click_prob(float(p0[0])))
    return model.click_probs(p0)


@dataclass(frozen=True)
class CorrelationSpec:
    """Joint law across modes.

    ``common-cause`` with fraction ``c``: per bin a latent click ``Z`` is
    drawn with the bin probability, and each mode copies ``Z`` with
    probability ``c`` or otherwise draws its own click. Marginals are
    unchanged for every ``c``.
    """

    kind: str = INDEPENDENT
    common_fraction: float = 0.0

    def __post_init__(self):
        c = check_probability(self.common_fraction, "common_fraction")
        if self.kind not in (INDEPENDENT, COMMON_CAUSE):
            raise DomainError(f"unknown correlation kind {self.kind!r}")
        if self.kind == INDEPENDENT and c != 0.0:
            raise DomainError("independent correlation requires common_fraction = 0")
        object.__setattr__(self, "common_fraction", c)
        if c == 0.0:
            object.__setattr__(self, "kind", INDEPENDENT)

    @classmethod
    def common_cause(cls, c):
        return cls(COMMON_CAUSE, c)

    def to_dict(self):
        return {"kind": self.kind, "common_fraction": self.common_fraction}


def _check_seed(seed):
    if isinstance(seed, bool) or int(seed) != seed or not 0 <= int(seed) < _SEED_LIMIT:
        raise DomainError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def uniforms(seed, mode, purpose, start, stop):
    """Uniform draws in [0, 1) for bins ``start .. stop-1`` of one substream."""
    seed = _check_seed(seed)
    if stop <= start:
        return np.empty(0)
    key = seed + ((int(mode) + (int(purpose) << 32)) << 64)
    block, skip = divmod(int(start), 4)
    bg = np.random.Philox(key=key, counter=block)
    raw = bg.random_raw(skip + (stop - start))[skip:]
    return (raw >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def _bernoulli(probs, seed, mode, purpose, start=0):
    u = uniforms(seed, mode, purpose, start, start + len(probs))
    return u < probs


@dataclass(frozen=True, eq=False)
class Record:
    """N x B click array (1 = click) plus the inputs that produced it."""

    outcomes: np.ndarray
    seed: int
    model: BinModel | None = None
    provenance: str = PROVENANCE
    correlation: CorrelationSpec = field(default_factory=CorrelationSpec)
    trajectory: dict | None = None

    def __post_init__(self):
        arr = check_binary_array(self.outcomes)
        if arr.ndim == 1:
            arr = arr[np.newaxis, :]
        if arr.ndim != 2 or arr.shape[1] < 1:
            raise DomainError("outcomes must be a non-empty (n_modes, n_bins) array")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "outcomes", arr)
        object.__setattr__(self, "seed", _check_seed(self.seed))

    @property
    def n_modes(self):
        return self.outcomes.shape[0]

    @property
    def n_bins(self):
        return self.outcomes.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Record):
            return NotImplemented
        return self.seed == other.seed and np.array_equal(self.outcomes, other.outcomes)

    def metadata(self):
        return {
            "n_modes": self.n_modes,
            "n_bins": self.n_bins,
            "seed": self.seed,
            "model": None if self.model is None else self.model.to_dict(),
            "correlation": self.correlation.to_dict(),
            "trajectory": self.trajectory,
            "provenance": self.provenance,
        }

    # binary: 16-byte little-endian header then row-major packed bits
    MAGIC = b"VR"
    _HEADER = struct.Struct("<2sHIQ")

    def to_bytes(self):
        n, b = self.outcomes.shape
        if n > 0xFFFF or b > 0xFFFFFFFF:
            raise DomainError("record too large for the binary header")
        header = self._HEADER.pack(self.MAGIC, n, b, self.seed)
        return header + np.packbits(self.outcomes.ravel(), bitorder="big").tobytes()

    @classmethod
    def from_bytes(cls, data, **metadata):
        if len(data) < cls._HEADER.size:
            raise DomainError("truncated record header")
        magic, n, b, seed = cls._HEADER.unpack_from(data)
        if magic != cls.MAGIC:
            raise DomainError(f"bad record magic {magic!r}")
        payload = np.frombuffer(data, dtype=np.uint8, offset=cls._HEADER.size)
        if len(payload) != (n * b + 7) // 8:
            raise DomainError("record payload length does not match header")
        bits = np.unpackbits(payload, count=n * b, bitorder="big")
        return cls(bits.reshape(n, b), seed, **metadata)

    def save(self, path):
        with open(path, "wb") as fh:
            fh.write(self.to_bytes())

    @classmethod
    def load(cls, path, **metadata):
        with open(path, "rb") as fh:
            return cls.from_bytes(fh.read(), **metadata)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"mode_{k}" for k in range(self.n_modes)])
        w.writerows(self.outcomes.T.tolist())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, seed=0, **metadata):
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        if rows and not rows[0][0].strip().isdigit():
            rows = rows[1:]
        return cls(np.array(rows, dtype=np.uint8).T, seed, **metadata)


def simulate_record(traj, model, n_bins, seed, t0=0.0):
    """Single-mode record: each bin an independent Bernoulli draw."""
    n_bins = check_count(n_bins, "n_bins")
    probs = bin_probabilities(traj, model, n_bins, t0)
    clicks = _bernoulli(probs, seed, 0, _OWN)
    return Record(clicks[np.newaxis, :], seed, model, trajectory=traj.to_dict())


def simulate_multimode(traj, model, n_modes, corr, n_bins, seed, t0=0.0):
    """N-mode record; mode k uses substream k, so mode 0 equals :func:`simulate_record`."""
    n_modes = check_count(n_modes, "n_modes")
    n_bins = check_count(n_bins, "n_bins")
    corr = corr or CorrelationSpec()
    probs = bin_probabilities(traj, model, n_bins, t0)
    out = np.empty((n_modes, n_bins), dtype=np.uint8)
    c = corr.common_fraction
    latent = _bernoulli(probs, seed, 0, _LATENT) if corr.kind == COMMON_CAUSE else None
    for k in range(n_modes):
        own = _bernoulli(probs, seed, k, _OWN)
        if latent is not None:
            copy = uniforms(seed, k, _SELECT, 0, n_bins) < c
            own = np.where(copy, latent, own)
        out[k] = own
    return Record(out, seed, model, correlation=corr, trajectory=traj.to_dict())


def bitmask_weights(n_modes):
    """Outcome index weights: mode 0 is the most significant bit."""
    return 1 << np.arange(n_modes - 1, -1, -1, dtype=np.int64)


def common_cause_pmf(p, n_modes, c):
    """Exact joint pmf of the common-cause generator, indexed by outcome bitmask."""
    p = check_probability(p, "p")
    c = check_probability(c, "c")
    n_modes = check_count(n_modes, "n_modes")
    if n_modes > 24:
        raise DomainError("joint pmf table limited to 24 modes")
    ones = np.array([bin(i).count("1") for i in range(1 << n_modes)])
    zeros = n_modes - ones
    on_if_z1, on_if_z0 = c + (1 - c) * p, (1 - c) * p
    with np.errstate(divide="ignore", invalid="ignore"):
        z1 = p * on_if_z1 ** ones * (1 - on_if_z1) ** zeros
        z0 = (1 - p) * on_if_z0 ** ones * (1 - on_if_z0) ** zeros
    return z1 + z0
