"""Shannon entropies of click records, exact and estimated, in nats."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlog1py, xlogy

from ._validation import (
    DomainError,
    NoSolutionError,
    check_count,
    check_probability,
)
from .record_model import bitmask_weights, common_cause_pmf

LN2 = math.log(2.0)
MAX_EXACT_MODES = 24
LZ_MIN_BINS = 1000

EXACT_BINARY = "exact-binary"
EXACT_JOINT = "exact-joint"
PLUGIN = "plugin"
MILLER_MADOW = "plugin-miller-madow"
LZ = "lz-parse-rate"


@dataclass(frozen=True)
class EntropyEstimate:
    """Entropy in nats together with how it was obtained."""

    nats: float
    estimator: str
    n_samples: int | None = None
    std_hint: float | None = None
    flags: tuple = ()
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.nats >= 0.0:
            raise DomainError(f"entropy must be >= 0, got {self.nats!r}")
        object.__setattr__(self, "nats", float(self.nats))

    @property
    def bits(self):
        return self.nats / LN2

    def __float__(self):
        return self.nats

    def to_dict(self):
        return {
            "nats": self.nats,
            "bits": self.bits,
            "estimator": self.estimator,
            "n_samples": self.n_samples,
            "std_hint": self.std_hint,
            "flags": list(self.flags),
            "details": self.details,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """pmf over the 2**N outcomes of an N-mode bin, indexed by bitmask.

    Mode 0 is the most significant bit, so the outcome string "0110" read
    left to right (modes 0..3) is the binary form of its index.
    """

    n_modes: int
    pmf: np.ndarray

    def __post_init__(self):
        n = check_count(self.n_modes, "n_modes")
        if n > MAX_EXACT_MODES:
            raise DomainError(f"exact joint tables are limited to {MAX_EXACT_MODES} modes")
        pmf = np.asarray(self.pmf, dtype=float)
        if pmf.shape != (1 << n,):
            raise DomainError(f"pmf must have 2**{n} entries, got shape {pmf.shape}")
        if np.any(pmf < 0) or not np.all(np.isfinite(pmf)):
            raise DomainError("pmf entries must be finite and >= 0")
        if abs(pmf.sum() - 1.0) > 1e-12:
            raise DomainError(f"pmf sums to {pmf.sum()!r}, not 1")
        pmf = pmf.copy()
        pmf.setflags(write=False)
        object.__setattr__(self, "pmf", pmf)

    def marginal(self, mode):
        """Click probability of one mode."""
        bit = 1 << (self.n_modes - 1 - mode)
        idx = np.arange(len(self.pmf))
        # summation can overshoot 1 by an ulp when one outcome holds all the mass
        return min(1.0, float(self.pmf[(idx & bit) != 0].sum()))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["bitmask", "probability"])
        for i, p in enumerate(self.pmf):
            w.writerow([i, repr(float(p))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text):
        rows = list(csv.DictReader(io.StringIO(text)))
        pmf = np.zeros(len(rows))
        for r in rows:
            pmf[int(r["bitmask"])] = float(r["probability"])
        return cls(int(len(rows)).bit_length() - 1, pmf)

    @classmethod
    def product(cls, probs):
        """Independent modes with the given click probabilities."""
        pmf = np.ones(1)
        for p in probs:
            p = check_probability(p)
            pmf = np.outer(pmf, [1 - p, p]).ravel()
        return cls(len(probs), pmf)

    @classmethod
    def common_cause(cls, p, n_modes, c):
        return cls(n_modes, common_cause_pmf(p, n_modes, c))


def _h2(p):
    # evaluate from the smaller of p, 1-p so H(p) == H(1-p) bit for bit
    s = min(p, 1.0 - p)
    return float(-xlogy(s, s) - xlog1py(1.0 - s, -s))


def binary_entropy(p):
    """Entropy of a Bernoulli(p) bit, with 0 ln 0 = 0."""
    p = check_probability(p, "p")
    return EntropyEstimate(_h2(p), EXACT_BINARY)


def binary_entropy_nats(p):
    return binary_entropy(p).nats


def small_p_expansion(lam, tau):
    """Leading small-bin form lam*tau*(1 - ln(lam*tau)) of the bin entropy."""
    x = float(lam) * float(tau)
    if not x > 0.0 or not math.isfinite(x):
        raise DomainError(f"lambda*tau must be > 0, got {x!r}")
    return x * (1.0 - math.log(x))


def maxinfo_gamma_tau(p0):
    """The product gamma*tau at which the hazard-law click probability is 1/2."""
    p0 = check_probability(p0, "p0")
    if p0 == 1.0:
        raise NoSolutionError("a perfect vacuum never clicks; no gamma*tau gives P = 1/2")
    return LN2 / (1.0 - p0)


def _entropy_of_pmf(pmf):
    return float(-xlogy(pmf, pmf).sum())


def joint_entropy_exact(dist):
    return EntropyEstimate(_entropy_of_pmf(dist.pmf), EXACT_JOINT)


def outcome_indices(record):
    """Per-bin bitmask of the N-mode outcome."""
    if record.n_modes > 62:
        raise DomainError("too many modes to index outcomes")
    w = bitmask_weights(record.n_modes)
    return (record.outcomes.astype(np.int64) * w[:, None]).sum(axis=0)


def empirical_joint_pmf(record):
    if record.n_modes > MAX_EXACT_MODES:
        raise DomainError(f"empirical tables are limited to {MAX_EXACT_MODES} modes")
    counts = np.bincount(outcome_indices(record), minlength=1 << record.n_modes)
    pmf = counts / record.n_bins
    # exact rational normalization can miss 1 by an ulp or two
    return JointDistribution(record.n_modes, pmf / pmf.sum())


def _jackknife_std(counts):
    """Leave-one-out jackknife standard error of the plug-in entropy."""
    nz = counts[counts > 0].astype(float)
    n = nz.sum()
    if n < 2:
        return 0.0
    # H over counts summing to M is ln M - sum(n ln n) / M; dropping one
    # sample of outcome i only changes the n_i term
    s = float(xlogy(nz, nz).sum())
    s_loo = s - xlogy(nz, nz) + xlogy(nz - 1, nz - 1)
    loo = math.log(n - 1) - s_loo / (n - 1)
    mean = float((nz * loo).sum() / n)
    var = (n - 1) / n * float((nz * (loo - mean) ** 2).sum())
    return math.sqrt(var)


def plugin_entropy(record, correction="none", jackknife=False):
    """Entropy of the empirical joint outcome distribution.

    ``correction="miller-madow"`` adds ``(m - 1) / (2B)`` with ``m`` the
    number of distinct observed outcomes. With ``jackknife=True`` the
    standard error is put in ``std_hint``.
    """
    if correction not in ("none", "miller-madow"):
        raise DomainError(f"unknown correction {correction!r}")
    idx = outcome_indices(record)
    counts = np.bincount(idx)
    b = record.n_bins
    q = counts[counts > 0] / b
    h = _entropy_of_pmf(q)
    m = len(q)
    estimator = PLUGIN
    if correction == "miller-madow":
        h += (m - 1) / (2.0 * b)
        estimator = MILLER_MADOW
    std = _jackknife_std(counts) if jackknife else None
    return EntropyEstimate(
        h, estimator, n_samples=b, std_hint=std, details={"observed_outcomes": m}
    )


def lz78_phrase_counts(symbols, checkpoints):
    """Incremental (LZ78) parse; phrase count after each checkpoint length.

    An unfinished trailing phrase counts as one phrase.
    """
    wanted = sorted(set(int(c) for c in checkpoints))
    out = {}
    # binary trie as two parallel child lists; node 0 is the root
    child0, child1 = [0], [0]
    node = phrases = 0
    pos = 0
    for target in wanted:
        for b in symbols[pos:target]:
            kids = child1 if b else child0
            nxt = kids[node]
            if nxt:
                node = nxt
            else:
                kids[node] = len(child0)
                child0.append(0)
                child1.append(0)
                phrases += 1
                node = 0
        pos = target
        out[target] = phrases + (1 if node else 0)
    return out


def _two_point_rate(n1, c1, n2, c2):
    # fit n*h = c*(ln c + C) through both checkpoints, eliminating C
    denom = n2 * c1 - n1 * c2
    if c1 < 2 or c2 <= c1 or denom <= 0:
        return None
    return c1 * c2 * math.log(c2 / c1) / denom


def lz_entropy_rate(record, mode_order="interleaved"):
    """LZ78 parse-rate estimate of the record entropy, in nats per bin.

    Modes are interleaved bin-major (all modes of bin 0, then bin 1, ...)
    so redundancy across modes within a bin is visible to the parser. With
    ``c(n)`` phrases after ``n`` symbols, the raw rate ``c ln c / n``
    carries a bias that shrinks only like ``1/ln c``. The reported value
    instead fits ``n h = c (ln c + C)`` at ``n/16`` and ``n``, removing the
    source-dependent constant ``C``; the raw rate is kept in ``details``.
    Results are scaled by N symbols per bin.
    """
    if mode_order != "interleaved":
        raise DomainError(f"unsupported mode order {mode_order!r}")
    stream = record.outcomes.T.ravel()
    n = len(stream)
    n1 = max(1, n // 16)
    counts = lz78_phrase_counts(stream.tolist(), [n1, n])
    c1, c2 = counts[n1], counts[n]
    raw = c2 * math.log(c2) / n if c2 > 1 else 0.0
    rate = _two_point_rate(n1, c1, n, c2)
    flags = []
    if rate is None:
        rate = raw
        flags.append("raw-rate-fallback")
    per_bin = rate * record.n_modes
    std = None
    if record.n_bins < LZ_MIN_BINS:
        flags.append("low-confidence")
        std = per_bin
    return EntropyEstimate(
        per_bin,
        LZ,
        n_samples=record.n_bins,
        std_hint=std,
        flags=tuple(flags),
        details={
            "symbols": n,
            "phrases": c2,
            "checkpoint_symbols": n1,
            "checkpoint_phrases": c1,
            "raw_nats_per_bin": raw * record.n_modes,
        },
    )


def subadditivity_gap(dist):
    """Sum of marginal entropies minus joint entropy (>= 0)."""
    marg = sum(_h2(dist.marginal(k)) for k in range(dist.n_modes))
    return marg - joint_entropy_exact(dist).nats
