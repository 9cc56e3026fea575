"""Reference computations for validating the fractional scheme.

None of this is used on the production path. ``rk4_integer_limit`` solves
the classical (alpha = beta = 1) system with a fourth-order method,
``caputo_l1_apply`` exposes the discrete derivative operator the scheme is
built on, and ``convergence_order`` measures the empirical order of the
scheme against a reference solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from dubovsky.errors import SimulationBlowUp
from dubovsky.model import DubovskyParams, Forcing, InitialConditions, forcing_eval, rhs_x, rhs_y
from dubovsky.scheme import check_order, memory_weights, scheme_coefficient
from dubovsky.sim import (
    BLOWUP_LIMIT,
    FractionalOrders,
    GridSpec,
    SchemeOptions,
    Trajectory,
    simulate,
)

Rhs = Callable[[float, float, float], tuple[float, float]]


def dubovsky_rhs(p: DubovskyParams, f: Forcing) -> Rhs:
    """Vector field (t, x, y) -> (dx/dt, dy/dt) of the classical system."""
    if f.kind == "tabulated":
        raise ValueError("rk4 needs forcing defined between grid nodes; tabulated is not")

    def field(t, x, y):
        return rhs_x(x, y, p), rhs_y(x, y, p, forcing_eval(f, t))

    return field


def rk4(field: Rhs, x0: float, y0: float, grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Classical fourth-order Runge-Kutta on a uniform grid."""
    h = grid.tau
    xs = np.empty(grid.N + 1)
    ys = np.empty(grid.N + 1)
    xs[0], ys[0] = x, y = x0, y0
    for j in range(grid.N):
        t = j * h
        k1x, k1y = field(t, x, y)
        k2x, k2y = field(t + 0.5 * h, x + 0.5 * h * k1x, y + 0.5 * h * k1y)
        k3x, k3y = field(t + 0.5 * h, x + 0.5 * h * k2x, y + 0.5 * h * k2y)
        k4x, k4y = field(t + h, x + h * k3x, y + h * k3y)
        x_next = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
        y_next = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        if not (abs(x_next) <= BLOWUP_LIMIT and abs(y_next) <= BLOWUP_LIMIT):
            raise SimulationBlowUp(j + 1, (x, y), (x_next, y_next))
        xs[j + 1], ys[j + 1] = x, y = x_next, y_next
    return xs, ys


def rk4_integer_limit(
    p: DubovskyParams, f: Forcing, ic: InitialConditions, grid: GridSpec
) -> Trajectory:
    xs, ys = rk4(dubovsky_rhs(p, f), ic.a, ic.b, grid)
    return Trajectory(
        times=grid.times,
        xs=xs,
        ys=ys,
        params=p,
        orders=FractionalOrders(1.0, 1.0),
        forcing=f,
        grid=grid,
        name="rk4",
    )


def caputo_l1_apply(samples, order: float, tau: float) -> np.ndarray:
    """Discrete Gerasimov-Caputo derivative of uniformly sampled data.

    Returns values at nodes 1..M for samples at nodes 0..M::

        D[j] = A * sum_{k=0}^{j-1} w_k * (s[j-k] - s[j-k-1]),   w_0 = 1

    with the same coefficient ``A`` and weights ``w_k`` as the scheme. This
    is the L1 discretization and is exact for linear data.
    """
    s = np.asarray(samples, dtype=np.float64)
    if s.ndim != 1 or len(s) < 2:
        raise ValueError("caputo_l1_apply needs at least 2 samples")
    order = check_order(order)
    M = len(s) - 1
    A = scheme_coefficient(order, tau)
    w = np.r_[1.0, memory_weights(order, M - 1)]
    inc = np.diff(s)
    # D[j] = A * (w * inc[::-1])[:j] summed, i.e. a causal convolution
    return A * np.convolve(inc, w)[:M]


@dataclass(frozen=True)
class RunConfig:
    """Everything except the grid step needed to reproduce a run."""

    params: DubovskyParams
    orders: FractionalOrders
    forcing: Forcing
    ic: InitialConditions
    T: float
    options: SchemeOptions = SchemeOptions()

    def run(self, tau: float) -> Trajectory:
        return simulate(
            self.params, self.orders, self.forcing, self.ic,
            GridSpec.from_tau(self.T, tau), self.options,
        )


def _max_error(coarse: Trajectory, ref: Trajectory) -> float:
    stride = (len(ref) - 1) // (len(coarse) - 1)
    if stride * (len(coarse) - 1) != len(ref) - 1:
        raise ValueError("reference grid must refine the coarse grid by an integer factor")
    rx = ref.xs[::stride]
    ry = ref.ys[::stride]
    return float(max(np.max(np.abs(coarse.xs - rx)), np.max(np.abs(coarse.ys - ry))))


@dataclass(frozen=True)
class ConvergenceResult:
    taus: tuple[float, ...]
    errors: tuple[float, ...]
    order: Optional[float]
    failure: Optional[str] = None


def convergence_order(
    run: RunConfig,
    tau_sequence: Sequence[float],
    reference: Optional[Trajectory] = None,
) -> ConvergenceResult:
    """Empirical order: least-squares slope of log(error) against log(tau).

    Errors are maxima over the coarse nodes of both components. Without a
    ``reference`` the same scheme at one eighth of the finest step is used.
    A blow-up at any step size leaves the order undefined.
    """
    taus = tuple(float(t) for t in tau_sequence)
    if len(taus) < 3:
        raise ValueError("need at least 3 step sizes")
    for big, small in zip(taus, taus[1:]):
        if not math.isclose(big, 2.0 * small, rel_tol=1e-9):
            raise ValueError("each step size must halve the previous one")
    try:
        if reference is None:
            reference = run.run(taus[-1] / 8.0)
        errors = tuple(_max_error(run.run(t), reference) for t in taus)
    except SimulationBlowUp as exc:
        return ConvergenceResult(taus, (), None, failure=str(exc))
    if min(errors) <= 0.0:
        return ConvergenceResult(taus, errors, None, failure="zero error; order undefined")
    order = float(np.polyfit(np.log(taus), np.log(errors), 1)[0])
    return ConvergenceResult(taus, errors, order)
