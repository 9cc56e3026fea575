"""Peak, period and regime analysis of simulated trajectories."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
from scipy.signal import peak_prominences

from dubovsky.sim import Trajectory

REGIMES = ("center", "stable_focus", "limit_cycle", "divergent", "undetermined")

# Envelope peaks below this share of the envelope range are treated as noise.
ENVELOPE_PROMINENCE = 0.25
# Envelope range below this share of the series range means no slow modulation.
ENVELOPE_SIGNIFICANCE = 0.05
# Minimum slow/fast period ratio for a two-tone signal.
CLUSTER_GAP_RATIO = 2.0


@dataclass(frozen=True)
class PeakList:
    indices: np.ndarray
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class PeriodEstimate:
    dominant: Optional[float] = None
    secondary: Optional[float] = None


@dataclass(frozen=True)
class RegimeThresholds:
    """Classification bands. Defaults are pinned by the test suite."""

    settle_fraction: float = 0.5
    center_low: float = 0.95
    center_high: float = 1.05
    focus_cutoff: float = 0.8
    limit_low: float = 0.9
    limit_high: float = 1.1
    closure_tolerance: float = 0.02
    divergence_ratio: float = 10.0

    def __post_init__(self):
        if not 0.0 < self.settle_fraction < 1.0:
            raise ValueError("settle_fraction must lie in (0, 1)")
        if not (0.0 < self.center_low <= 1.0 <= self.center_high):
            raise ValueError("center band must bracket 1")
        if not (0.0 < self.limit_low <= 1.0 <= self.limit_high):
            raise ValueError("limit-cycle band must bracket 1")
        if not 0.0 < self.focus_cutoff < 1.0:
            raise ValueError("focus_cutoff must lie in (0, 1)")
        if self.closure_tolerance <= 0.0 or self.divergence_ratio <= 1.0:
            raise ValueError("closure_tolerance must be > 0 and divergence_ratio > 1")


@dataclass(frozen=True)
class RegimeReport:
    """Regime label plus the measurements it was derived from.

    ``amplitude_trend`` compares the last and first windows of the whole
    run, ``settled_trend`` does the same inside the settled window, and
    ``closure_metric`` is the phase-plane distance from the final state to
    the previous cycle, in the units of x and y.
    """

    regime: str
    dominant_period: Optional[float] = None
    secondary_period: Optional[float] = None
    amplitude_trend: Optional[float] = None
    settled_trend: Optional[float] = None
    closure_metric: Optional[float] = None
    cycle_amplitude: Optional[float] = None

    @property
    def closure_ratio(self) -> Optional[float]:
        if self.closure_metric is None or not self.cycle_amplitude:
            return None
        return self.closure_metric / self.cycle_amplitude

    def as_dict(self) -> dict:
        out = asdict(self)
        out["closure_ratio"] = self.closure_ratio
        return out

    def to_lines(self) -> list[str]:
        """``key=value`` lines; missing values print as ``nan``."""
        lines = []
        for key, value in self.as_dict().items():
            if value is None:
                value = "nan"
            elif isinstance(value, float):
                value = f"{value:.6g}"
            lines.append(f"{key}={value}")
        return lines


def find_peaks(series, min_separation: int = 1) -> PeakList:
    """Strict interior local maxima of a 1-D series.

    A flat-topped maximum counts once, at the first index of the plateau.
    Endpoints are never peaks. When two peaks are closer than
    ``min_separation`` samples the lower one is dropped (the earlier one on
    ties).
    """
    s = np.asarray(series, dtype=np.float64)
    if s.ndim != 1 or len(s) < 3:
        raise ValueError("find_peaks needs a 1-D series of at least 3 samples")
    if min_separation < 1:
        raise ValueError("min_separation must be >= 1")

    # collapse runs of equal values; a peak is a run higher than both neighbours
    starts = np.flatnonzero(np.r_[True, s[1:] != s[:-1]])
    run_values = s[starts]
    interior = np.arange(1, len(starts) - 1)
    is_peak = (run_values[interior] > run_values[interior - 1]) & (
        run_values[interior] > run_values[interior + 1]
    )
    idx = starts[interior[is_peak]]

    if min_separation > 1 and len(idx) > 1:
        order = np.lexsort((idx, -s[idx]))
        keep = np.zeros(len(idx), dtype=bool)
        taken: list[int] = []
        for i in order:
            if all(abs(idx[i] - t) >= min_separation for t in taken):
                keep[i] = True
                taken.append(idx[i])
        idx = idx[keep]
    return PeakList(indices=idx, values=s[idx])


def _refine(s: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """Sub-sample peak positions from a parabola through each peak's neighbours."""
    pos = idx.astype(np.float64)
    ok = (idx > 0) & (idx < len(s) - 1)
    i = idx[ok]
    left, mid, right = s[i - 1], s[i], s[i + 1]
    denom = left - 2.0 * mid + right
    with np.errstate(divide="ignore", invalid="ignore"):
        shift = np.where(denom != 0.0, 0.5 * (left - right) / denom, 0.0)
    pos[ok] += np.clip(shift, -0.5, 0.5)
    return pos


def estimate_periods_series(values, dt: float) -> PeriodEstimate:
    """Dominant and (optional) secondary period of a sampled oscillation.

    Every local maximum is taken as a cycle of the fastest component. The
    sequence of maximum values forms an upper envelope; prominent peaks of
    that envelope mark a slower modulation. When the slow spacing is at
    least twice the fast one the signal is reported as two-tone, slow
    period first.
    """
    s = np.asarray(values, dtype=np.float64)
    peaks = find_peaks(s)
    if len(peaks) < 2:
        return PeriodEstimate()
    pos = _refine(s, peaks.indices)
    fast = float(np.mean(np.diff(pos))) * dt

    env = peaks.values
    env_range = float(env.max() - env.min())
    series_range = float(s.max() - s.min())
    if len(env) >= 3 and env_range > ENVELOPE_SIGNIFICANCE * series_range:
        env_peaks = find_peaks(env).indices
        if len(env_peaks):
            prom = peak_prominences(env, env_peaks)[0]
            env_peaks = env_peaks[prom >= ENVELOPE_PROMINENCE * env_range]
        if len(env_peaks) >= 2:
            # interpolate envelope peak positions in time, not in peak count
            frac = _refine(env, env_peaks)
            slow_pos = np.interp(frac, np.arange(len(pos)), pos)
            slow = float(np.mean(np.diff(slow_pos))) * dt
            if slow >= CLUSTER_GAP_RATIO * fast:
                return PeriodEstimate(dominant=slow, secondary=fast)
    return PeriodEstimate(dominant=fast)


def estimate_periods(traj: Trajectory) -> PeriodEstimate:
    """Periods of the x oscillation of a trajectory, in its time units."""
    return estimate_periods_series(traj.xs, traj.dt)


def extremum_swings(series) -> tuple[np.ndarray, np.ndarray]:
    """Peak-to-trough heights between consecutive interior extrema.

    Returns the swing heights and the index midpoints they belong to.
    """
    s = np.asarray(series, dtype=np.float64)
    if len(s) < 3:
        return np.empty(0), np.empty(0)
    ext = np.sort(np.r_[find_peaks(s).indices, find_peaks(-s).indices])
    swings = np.abs(np.diff(s[ext]))
    mids = 0.5 * (ext[1:] + ext[:-1])
    return swings, mids


def swing_decay_rate(traj: Trajectory) -> float:
    """Fitted exponential decay rate (1/time) of the x swings.

    Positive values mean damping. Swings are peak-to-trough heights, which
    need no knowledge of the equilibrium.
    """
    swings, mids = extremum_swings(traj.xs)
    swings, mids = swings[swings > 0], mids[swings > 0]
    if len(swings) < 2:
        return math.nan
    slope = np.polyfit(mids * traj.dt, np.log(swings), 1)[0]
    return float(-slope)


def _peak_to_trough(s: np.ndarray) -> float:
    return float(s.max() - s.min()) if len(s) else 0.0


def _window_trend(s: np.ndarray, window: int) -> Optional[float]:
    window = max(1, min(window, len(s) // 2))
    first = _peak_to_trough(s[:window])
    last = _peak_to_trough(s[-window:])
    if first <= 0.0:
        return None
    return last / first


def _closure(traj: Trajectory, period: float) -> tuple[Optional[float], Optional[float]]:
    """Distance from the final state to the previous cycle, and that cycle's size."""
    steps = period / traj.dt
    end = len(traj) - 1
    lo = int(math.floor(end - 1.5 * steps))
    hi = int(math.ceil(end - 0.5 * steps))
    if lo < 0 or hi <= lo:
        return None, None
    xs = traj.xs[lo : hi + 1]
    ys = traj.ys[lo : hi + 1]
    dist = np.hypot(xs - traj.xs[end], ys - traj.ys[end])
    size = math.hypot(_peak_to_trough(xs), _peak_to_trough(ys))
    return float(dist.min()), size


def classify_regime(
    traj: Trajectory,
    settle_fraction: Optional[float] = None,
    thresholds: RegimeThresholds = RegimeThresholds(),
) -> RegimeReport:
    """Label a trajectory as center, stable focus, limit cycle or divergent.

    Rules are tried in that order:

    * divergent: non-finite values, or the x amplitude grows more than
      ``divergence_ratio``-fold between the first and last windows;
    * center: unforced (or unknown forcing) and the whole-run amplitude
      trend lies in the center band;
    * limit_cycle: forced (or unknown forcing), settled trend in the
      limit-cycle band and closure within ``closure_tolerance`` of the
      cycle size;
    * stable_focus: amplitude trend below ``focus_cutoff`` and strictly
      shrinking swings in the settled window.

    Windows span a quarter of the run, widened to one dominant period when
    the oscillation is slower than that.
    """
    if settle_fraction is None:
        settle_fraction = thresholds.settle_fraction
    if not 0.0 < settle_fraction < 1.0:
        raise ValueError("settle_fraction must lie in (0, 1)")
    th = thresholds

    xs, ys = traj.xs, traj.ys
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        return RegimeReport("divergent")

    periods = estimate_periods(traj)
    dt = traj.dt
    period_steps = int(round(periods.dominant / dt)) if periods.dominant else 0

    n = len(xs)
    trend = _window_trend(xs, max(n // 4, period_steps))
    start = int(settle_fraction * (n - 1))
    settled = xs[start:]
    settled_trend = _window_trend(settled, max(len(settled) // 4, period_steps))

    closure = size = None
    if periods.dominant:
        closure, size = _closure(traj, periods.dominant)

    report = dict(
        dominant_period=periods.dominant,
        secondary_period=periods.secondary,
        amplitude_trend=trend,
        settled_trend=settled_trend,
        closure_metric=closure,
        cycle_amplitude=size,
    )
    forced = traj.forced

    if trend is not None and trend > th.divergence_ratio:
        return RegimeReport("divergent", **report)
    if trend is not None and forced is not True and th.center_low <= trend <= th.center_high:
        return RegimeReport("center", **report)
    if (
        forced is not False
        and settled_trend is not None
        and th.limit_low <= settled_trend <= th.limit_high
        and closure is not None
        and size
        and closure < th.closure_tolerance * size
    ):
        return RegimeReport("limit_cycle", **report)
    if trend is not None and trend < th.focus_cutoff:
        swings, _ = extremum_swings(settled)
        if len(swings) < 2:
            swings, _ = extremum_swings(xs)
        if len(swings) >= 2 and np.all(np.diff(swings) < 0.0):
            return RegimeReport("stable_focus", **report)
    return RegimeReport("undetermined", **report)
