"""scikit-learn compatible wrappers around the click model and entropy estimators.

Arrays follow the scikit-learn layout: one row per time bin, one column per
mode. ``Record.outcomes`` is the transpose of that.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from ._validation import DomainError, check_binary_array, check_probability_array
from .entropy import empirical_joint_pmf, lz_entropy_rate, outcome_indices, plugin_entropy
from .landauer import power_min
from .record_model import HAZARD, BinModel, Record


class ClickProbabilityTransformer(TransformerMixin, BaseEstimator):
    """Map vacuum probabilities p0 to per-bin click probabilities.

    Stateless: ``fit`` only validates input and records its width.

    Parameters
    ----------
    gamma : float, default=1.0
        Measurement strength in 1/s.
    tau : float, default=1.0
        Bin duration in s.
    law : {"hazard", "threshold"}, default="hazard"
    """

    def __init__(self, gamma=1.0, tau=1.0, law=HAZARD):
        self.gamma = gamma
        self.tau = tau
        self.law = law

    def fit(self, X, y=None):
        X = check_array(X, dtype=float, ensure_all_finite=True)
        check_probability_array(X, "X")
        self.model_ = BinModel(self.law, self.gamma, self.tau)
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "model_")
        X = check_array(X, dtype=float, ensure_all_finite=True)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        return self.model_.click_probs(X)


class RecordEntropyEstimator(BaseEstimator):
    """Estimate the per-bin joint entropy of a binary click record.

    Parameters
    ----------
    method : {"plugin", "miller-madow", "lz"}, default="plugin"
    jackknife : bool, default=False
        Attach a jackknife standard error (plug-in methods only).

    Attributes
    ----------
    entropy_ : EntropyEstimate
    joint_pmf_ : JointDistribution or None
        Empirical outcome distribution; None for the LZ method or more
        than 24 modes.
    """

    def __init__(self, method="plugin", jackknife=False):
        self.method = method
        self.jackknife = jackknife

    def _record(self, X):
        if isinstance(X, Record):
            return X
        X = check_array(X, dtype=None, ensure_all_finite=True)
        return Record(check_binary_array(X).T, seed=0)

    def fit(self, X, y=None):
        rec = self._record(X)
        if self.method == "plugin":
            est = plugin_entropy(rec, "none", self.jackknife)
        elif self.method == "miller-madow":
            est = plugin_entropy(rec, "miller-madow", self.jackknife)
        elif self.method == "lz":
            est = lz_entropy_rate(rec)
        else:
            raise DomainError(f"unknown method {self.method!r}")
        self.entropy_ = est
        self.joint_pmf_ = (
            empirical_joint_pmf(rec) if self.method != "lz" and rec.n_modes <= 24 else None
        )
        self.n_features_in_ = rec.n_modes
        return self

    @property
    def entropy_nats_(self):
        check_is_fitted(self, "entropy_")
        return self.entropy_.nats

    def power_bound(self, T, tau):
        """Landauer power bound for resetting the fitted record's register."""
        return power_min(T, tau, self.entropy_nats_)

    def score(self, X, y=None):
        """Negative cross-entropy (nats per bin) of ``X`` under the fitted pmf."""
        check_is_fitted(self, "entropy_")
        if self.joint_pmf_ is None:
            raise DomainError("score needs a fitted plug-in pmf")
        rec = self._record(X)
        p = self.joint_pmf_.pmf[outcome_indices(rec)]
        with np.errstate(divide="ignore"):
            return float(np.mean(np.log(p)))


__all__ = ["ClickProbabilityTransformer", "RecordEntropyEstimator"]
