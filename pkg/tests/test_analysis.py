import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import preset_run
from dubovsky.analysis import (
    RegimeThresholds,
    classify_regime,
    estimate_periods,
    estimate_periods_series,
    extremum_swings,
    find_peaks,
    swing_decay_rate,
)
from dubovsky.sim import Trajectory


def test_find_peaks_cosine():
    t = np.arange(0.0, 4 * np.pi + 1e-9, 0.01)
    peaks = find_peaks(np.cos(t))
    # t = 0 is an endpoint, so only the maximum near 2*pi remains
    assert len(peaks) == 1
    assert t[peaks.indices[0]] == pytest.approx(2 * np.pi, abs=0.01)
    assert peaks.values[0] == pytest.approx(1.0, abs=1e-4)


def test_find_peaks_monotone_and_short():
    assert len(find_peaks(np.arange(10.0))) == 0
    with pytest.raises(ValueError):
        find_peaks([1.0, 2.0])


def test_find_peaks_plateau_reports_first_index():
    peaks = find_peaks([0.0, 1.0, 3.0, 3.0, 3.0, 1.0, 0.0])
    assert list(peaks.indices) == [2]
    # a shoulder that rises again is not a peak
    assert len(find_peaks([0.0, 2.0, 2.0, 3.0, 1.0])) == 1


def test_find_peaks_min_separation():
    s = np.array([0, 3, 0, 2, 0, 5, 0, 1, 0], dtype=float)
    assert list(find_peaks(s).indices) == [1, 3, 5, 7]
    assert list(find_peaks(s, min_separation=3).indices) == [1, 5]


@given(st.lists(st.floats(-100, 100), min_size=3, max_size=200), st.floats(0.01, 100))
def test_find_peaks_scale_equivariant(values, c):
    s = np.array(values)
    a = find_peaks(s)
    b = find_peaks(c * s)
    # scaling can merge values only through rounding; exclude such inputs
    if np.array_equal(np.sign(np.diff(s)), np.sign(np.diff(c * s))):
        assert np.array_equal(a.indices, b.indices)


@given(st.lists(st.floats(-100, 100), min_size=3, max_size=200))
def test_find_peaks_are_strict_local_maxima(values):
    s = np.array(values)
    for i in find_peaks(s).indices:
        assert 0 < i < len(s) - 1
        assert s[i] > s[i - 1]
        j = i
        while s[j + 1] == s[i]:
            j += 1
        assert s[j + 1] < s[i]


def test_period_single_cosine():
    t = np.arange(0.0, 100.0, 0.01)
    est = estimate_periods_series(np.cos(2 * t), 0.01)
    assert est.dominant == pytest.approx(np.pi, rel=0.02)
    assert est.secondary is None


def test_period_two_tone():
    t = np.arange(0.0, 200.0 + 1e-9, 0.01)
    est = estimate_periods_series(np.cos(0.1 * t) + 0.2 * np.cos(2 * t), 0.01)
    assert est.dominant == pytest.approx(2 * np.pi / 0.1, rel=0.05)
    assert est.secondary == pytest.approx(np.pi, rel=0.05)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.2, 5.0), st.integers(20, 200), st.floats(5.0, 12.0), st.floats(0, 2 * np.pi))
def test_period_sampled_cosine(omega, per_period, periods, phase):
    period = 2 * np.pi / omega
    dt = period / per_period
    t = np.arange(0.0, periods * period, dt)
    est = estimate_periods_series(np.cos(omega * t + phase), dt)
    assert est.dominant == pytest.approx(period, rel=0.02)


def test_period_too_few_peaks():
    t = np.linspace(0, 5, 500)
    assert estimate_periods_series(np.cos(t), t[1]).dominant is None


def test_fig1_peaks_near_equal():
    traj = preset_run("fig1")
    peaks = find_peaks(traj.xs)
    assert len(peaks) >= 3
    assert (peaks.values.max() - peaks.values.min()) / peaks.values.mean() < 0.02


def test_fig2_periods():
    est = estimate_periods(preset_run("fig2"))
    assert est.secondary == pytest.approx(2 * np.pi, rel=0.15)
    assert 50.0 <= est.dominant <= 80.0


@pytest.mark.parametrize(
    "name, regime",
    [("fig1", "center"), ("fig3", "stable_focus"), ("fig4", "limit_cycle"),
     ("fig5", "limit_cycle"), ("fig6", "limit_cycle")],
)
def test_preset_regimes(name, regime):
    report = classify_regime(preset_run(name))
    assert report.regime == regime
    assert report.closure_metric >= 0.0
    assert report.amplitude_trend > 0.0


def _tail(traj, fraction):
    start = int(fraction * (len(traj) - 1))
    return dataclasses.replace(
        traj, times=traj.times[start:] - traj.times[start], xs=traj.xs[start:], ys=traj.ys[start:],
        grid=None,
    )


@pytest.mark.parametrize("name", ["fig1", "fig4", "fig5", "fig6"])
def test_regime_survives_dropping_transient(name):
    traj = preset_run(name)
    full = classify_regime(traj)
    assert classify_regime(_tail(traj, 0.5)).regime == full.regime


def test_fig3_peaks_decrease_toward_equilibrium():
    traj = preset_run("fig3")
    peaks = find_peaks(traj.xs)
    above = peaks.values - traj.params.x_star
    assert len(above) >= 2
    assert np.all(np.diff(above) < 0)


def test_constant_trajectory_is_undetermined():
    t = np.arange(100.0)
    traj = Trajectory(t, np.full(100, 1.3), np.full(100, 0.5))
    report = classify_regime(traj)
    assert report.regime == "undetermined"
    assert report.amplitude_trend is None


def test_non_finite_is_divergent():
    t = np.arange(10.0)
    xs = np.r_[np.ones(9), np.inf]
    assert classify_regime(Trajectory(t, xs, np.ones(10))).regime == "divergent"


def test_growing_is_divergent():
    t = np.arange(0.0, 200.0, 0.05)
    xs = np.exp(0.03 * t) * np.cos(t)
    report = classify_regime(Trajectory(t, xs, np.sin(t)))
    assert report.regime == "divergent"
    assert report.amplitude_trend > 10


def test_unknown_forcing_damped_signal():
    t = np.arange(0.0, 250.0, 0.05)
    xs = 1.3 + 0.05 * np.exp(-0.02 * t) * np.cos(0.07 * t)
    ys = 0.5 + 0.05 * np.exp(-0.02 * t) * np.sin(0.07 * t)
    assert classify_regime(Trajectory(t, xs, ys)).regime == "stable_focus"


def test_swings_and_decay_rate():
    t = np.arange(0.0, 300.0, 0.01)
    xs = np.exp(-0.01 * t) * np.cos(t)
    swings, mids = extremum_swings(xs)
    assert np.all(np.diff(swings) < 0)
    traj = Trajectory(t, xs, np.zeros_like(t))
    assert swing_decay_rate(traj) == pytest.approx(0.01, rel=0.02)


def test_thresholds_validation():
    with pytest.raises(ValueError):
        RegimeThresholds(settle_fraction=1.0)
    with pytest.raises(ValueError):
        RegimeThresholds(center_low=1.1)


def test_report_lines():
    report = classify_regime(preset_run("fig3"))
    lines = report.to_lines()
    assert "regime=stable_focus" in lines
    assert any(line.startswith("closure_ratio=") for line in lines)
