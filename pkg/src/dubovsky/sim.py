"""Explicit nonlocal finite-difference stepper for the fractional system.

For j >= 1 the update reads::

    x[j+1] = x[j] * (1 - (lam*n/A) * (x[j] - 1) * (y[j] - y*))
             - sum_{k=1}^{U} p_k * (x[j-k+1] - x[j-k])
    y[j+1] = y[j] * (1 + (n*(1-n)/B) * y[j] * (x[j] - x*))
             - sum_{k=1}^{U} q_k * (y[j-k+1] - y[j-k]) + F_j

with ``U = j - 1`` by default (``U = j`` for the full L1 history) and
``F_j = f(t_j)`` or ``f(t_j) / B`` depending on the forcing scale. The
j = 0 step is the same formula with an empty memory sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from dubovsky.errors import ConfigError, SimulationBlowUp
from dubovsky.model import DubovskyParams, Forcing, InitialConditions
from dubovsky.scheme import check_order, memory_weights, scheme_coefficient

# Magnitude treated as divergence even while still finite.
BLOWUP_LIMIT = 1e12

SumBound = Literal["as_paper", "full_history"]
ForcingScale = Literal["as_paper", "consistent"]


@dataclass(frozen=True)
class FractionalOrders:
    """Orders (alpha, beta) of the x and y derivatives, each in (0, 1]."""

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_order(self.alpha, "alpha"))
        object.__setattr__(self, "beta", check_order(self.beta, "beta"))


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of N steps over [0, T]; ``tau`` is T/N."""

    T: float = 250.0
    N: int = 5000

    def __post_init__(self):
        T = float(self.T)
        if not math.isfinite(T) or T <= 0.0:
            raise ConfigError(f"T must be positive, got {self.T!r}")
        if isinstance(self.N, bool) or int(self.N) != self.N:
            raise ConfigError(f"N must be an integer, got {self.N!r}")
        if int(self.N) < 2:
            raise ConfigError(f"N must be >= 2, got {self.N!r}")
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "N", int(self.N))

    @classmethod
    def from_tau(cls, T: float, tau: float) -> GridSpec:
        """Grid with the step count closest to ``T / tau``."""
        if not tau > 0.0:
            raise ConfigError(f"tau must be positive, got {tau!r}")
        return cls(T=T, N=max(int(round(T / tau)), 2))

    @property
    def tau(self) -> float:
        return self.T / self.N

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N + 1, dtype=np.float64) * self.tau


@dataclass(frozen=True)
class SchemeOptions:
    sum_bound: SumBound = "as_paper"
    forcing_scale: ForcingScale = "as_paper"

    def __post_init__(self):
        if self.sum_bound not in ("as_paper", "full_history"):
            raise ConfigError(
                f"sum_bound must be 'as_paper' or 'full_history', got {self.sum_bound!r}"
            )
        if self.forcing_scale not in ("as_paper", "consistent"):
            raise ConfigError(
                "forcing_scale must be 'as_paper' or 'consistent', "
                f"got {self.forcing_scale!r}"
            )


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Solution on a uniform grid.

    The run metadata is ``None`` for trajectories read back from CSV, in
    which case analysis treats the forcing as unknown.
    """

    times: np.ndarray
    xs: np.ndarray
    ys: np.ndarray
    params: Optional[DubovskyParams] = None
    orders: Optional[FractionalOrders] = None
    forcing: Optional[Forcing] = None
    grid: Optional[GridSpec] = None
    options: Optional[SchemeOptions] = None
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        arrays = []
        for attr in ("times", "xs", "ys"):
            arr = np.array(getattr(self, attr), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, attr, arr)
            arrays.append(arr)
        if not (arrays[0].ndim == 1 and arrays[0].shape == arrays[1].shape == arrays[2].shape):
            raise ValueError("times, xs and ys must be 1-D sequences of equal length")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def dt(self) -> float:
        if self.grid is not None:
            return self.grid.tau
        return float((self.times[-1] - self.times[0]) / (len(self.times) - 1))

    @property
    def forced(self) -> Optional[bool]:
        """True/False when the forcing is known, None otherwise."""
        if self.forcing is None:
            return None
        return not self.forcing.is_zero


def memory_sum(weights: np.ndarray, increments: np.ndarray, j: int, upper: int) -> float:
    """``sum_{k=1}^{upper} w_k * increments[j-k]`` with ``increments[i] = s[i+1] - s[i]``."""
    if upper <= 0:
        return 0.0
    return float(np.dot(weights[upper - 1 :: -1], increments[j - upper : j]))


def simulate(
    p: DubovskyParams,
    orders: FractionalOrders,
    f: Forcing,
    ic: InitialConditions,
    grid: GridSpec,
    opts: SchemeOptions = SchemeOptions(),
    name: Optional[str] = None,
) -> Trajectory:
    """Run the explicit scheme and return the full trajectory.

    Raises:
        SimulationBlowUp: a state became non-finite or exceeded 1e12 in size.
        ConfigError: tabulated forcing does not cover the grid.
    """
    N, tau = grid.N, grid.tau
    times = grid.times
    A = scheme_coefficient(orders.alpha, tau)
    B = scheme_coefficient(orders.beta, tau)
    try:
        forcing = f.sample(times)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if opts.forcing_scale == "consistent":
        forcing = forcing / B

    # weights reversed once so each memory sum is a contiguous dot product
    p_rev = np.ascontiguousarray(memory_weights(orders.alpha, N)[::-1])
    q_rev = np.ascontiguousarray(memory_weights(orders.beta, N)[::-1])
    full = opts.sum_bound == "full_history"

    cx = p.lam * p.n / A
    cy = p.n * (1.0 - p.n) / B
    x_star, y_star = p.x_star, p.y_star

    xs = np.empty(N + 1)
    ys = np.empty(N + 1)
    dx = np.empty(N)
    dy = np.empty(N)
    xs[0] = x = ic.a
    ys[0] = y = ic.b
    for j in range(N):
        upper = j if full else j - 1
        if upper > 0:
            sx = np.dot(p_rev[N - upper :], dx[j - upper : j])
            sy = np.dot(q_rev[N - upper :], dy[j - upper : j])
        else:
            sx = sy = 0.0
        x_next = x * (1.0 - cx * (x - 1.0) * (y - y_star)) - sx
        y_next = y * (1.0 + cy * y * (x - x_star)) - sy + forcing[j]
        if not (abs(x_next) <= BLOWUP_LIMIT and abs(y_next) <= BLOWUP_LIMIT):
            raise SimulationBlowUp(j + 1, (float(x), float(y)), (x_next, y_next))
        xs[j + 1] = x_next
        ys[j + 1] = y_next
        dx[j] = x_next - x
        dy[j] = y_next - y
        x, y = x_next, y_next

    return Trajectory(
        times=times,
        xs=xs,
        ys=ys,
        params=p,
        orders=orders,
        forcing=f,
        grid=grid,
        options=opts,
        name=name,
    )
