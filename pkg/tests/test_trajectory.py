import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from recordcost import DomainError
from recordcost.trajectory import (
    ExponentialRelaxation,
    TabulatedTrajectory,
    constant,
    exponential_relaxation,
    load_csv,
    sample_at_bin_starts,
    tabulated,
)

probs = st.floats(0.0, 1.0)


def test_constant():
    tr = constant(0.3)
    assert tr(0.0) == tr(1e9) == 0.3
    assert tr.is_stationary
    assert np.all(sample_at_bin_starts(tr, 1e-6, 5) == 0.3)
    with pytest.raises(DomainError):
        constant(1.2)


def test_exponential_relaxation_half_point():
    tr = exponential_relaxation(0.0, 1.0, 1e3)
    assert tr(0.0) == 0.0
    # oracle: 1 - exp(-ln 2) = 1/2
    assert tr(math.log(2) * 1e-3) == pytest.approx(0.5, rel=1e-15)
    assert tr(1.0) == pytest.approx(1.0)
    assert not tr.is_stationary
    assert exponential_relaxation(0.4, 0.4, 5.0).is_stationary


def test_exponential_relaxation_validation():
    with pytest.raises(DomainError):
        ExponentialRelaxation(0.2, 1.5, 1.0)
    with pytest.raises(DomainError):
        ExponentialRelaxation(0.2, 0.5, -1.0)


def test_tabulated_interpolation_and_domain():
    tr = tabulated([(0.0, 0.0), (1.0, 1.0), (2.0, 0.5)])
    assert tr(0.5) == 0.5
    assert tr(1.5) == 0.75
    with pytest.raises(DomainError):
        tr(2.5)
    with pytest.raises(DomainError):
        tabulated([(0.0, 0.1), (0.0, 0.2)])
    with pytest.raises(DomainError):
        tabulated([(0.0, 0.1), (1.0, 1.2)])


def test_sampling_must_cover_last_bin():
    tr = tabulated([(0.0, 0.2), (1.0, 0.8)])
    assert len(sample_at_bin_starts(tr, 0.1, 10)) == 10
    with pytest.raises(DomainError):
        sample_at_bin_starts(tr, 0.1, 11)
    with pytest.raises(DomainError):
        sample_at_bin_starts(tr, 0.1, 5, t0=-0.1)


def test_load_csv(tmp_path):
    path = tmp_path / "traj.csv"
    path.write_text("# measured occupation\nt_seconds,p0\n0,0.9\n\n1e-3,0.5\n2e-3,0.1\n")
    tr = load_csv(path)
    assert isinstance(tr, TabulatedTrajectory)
    assert tr(5e-4) == pytest.approx(0.7)
    bad = tmp_path / "bad.csv"
    bad.write_text("0,0.9\n1,abc\n")
    with pytest.raises(DomainError):
        load_csv(bad)
    short = tmp_path / "short.csv"
    short.write_text("0\n")
    with pytest.raises(DomainError):
        load_csv(short)


def test_invalid_sampling_arguments():
    with pytest.raises(DomainError):
        sample_at_bin_starts(constant(0.5), 0.0, 3)
    with pytest.raises(DomainError):
        sample_at_bin_starts(constant(0.5), 1.0, 0)


@given(probs, probs, st.floats(0.0, 1e9), st.floats(0.0, 1e3))
def test_relaxation_stays_in_unit_interval(a, b, rate, t):
    assert 0.0 <= exponential_relaxation(a, b, rate)(t) <= 1.0


@given(st.lists(st.tuples(st.floats(-1e3, 1e3), probs), min_size=2, max_size=20), st.floats(0, 1))
def test_tabulated_stays_in_unit_interval(samples, frac):
    times = sorted({t for t, _ in samples})
    if len(times) < 2:
        return
    tr = tabulated(zip(times, [p for _, p in samples]))
    t = times[0] + frac * (times[-1] - times[0])
    assert 0.0 <= tr(min(t, times[-1])) <= 1.0


@given(probs, probs, st.floats(1e-3, 1e6), st.floats(1e-9, 1e-3), st.integers(1, 50), st.floats(0, 1))
def test_samples_equal_eval_at_bin_starts(a, b, rate, tau, n, t0):
    tr = exponential_relaxation(a, b, rate)
    s = sample_at_bin_starts(tr, tau, n, t0)
    assert len(s) == n
    for k in range(n):
        assert s[k] == tr.eval(t0 + k * tau)
