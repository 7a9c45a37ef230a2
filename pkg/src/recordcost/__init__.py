"""Landauer cost bounds for time-binned click/no-click vacuum-test records."""

__version__ = "0.1.0"

from ._validation import DomainError, NoSolutionError
from .constants import CODATA2018, DimensionError, PhysicalConstants, Quantity, planck_area
from .entropy import (
    EntropyEstimate,
    JointDistribution,
    binary_entropy,
    empirical_joint_pmf,
    joint_entropy_exact,
    lz_entropy_rate,
    maxinfo_gamma_tau,
    plugin_entropy,
    small_p_expansion,
)
from .estimators import ClickProbabilityTransformer, RecordEntropyEstimator
from .landauer import (
    CostReport,
    ModeDensitySpec,
    cost_report,
    mode_density,
    power_density,
    power_min,
    q_min_per_bin,
    small_tau_power_asymptote,
    total_power_iid,
    total_power_joint,
    worst_case_power,
)
from .record_model import (
    BinModel,
    CorrelationSpec,
    Record,
    bin_probabilities,
    click_rate,
    hazard_click_prob,
    simulate_multimode,
    simulate_record,
    threshold_click_prob,
)
from .scenarios import (
    CircuitQedInput,
    DeSitterInput,
    circuit_qed_report,
    desitter_identity_check,
    desitter_report,
)
from .trajectory import (
    constant,
    exponential_relaxation,
    sample_at_bin_starts,
    tabulated,
)
