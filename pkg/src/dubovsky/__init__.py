"""Fractional-order Dubovsky model of Kondratiev long waves.

The system couples x(t), the efficiency of new technologies, and y(t), the
return on assets, through Gerasimov-Caputo derivatives of orders alpha and
beta, and is advanced with an explicit nonlocal finite-difference scheme.
"""

from dubovsky.analysis import (
    PeakList,
    PeriodEstimate,
    RegimeReport,
    RegimeThresholds,
    classify_regime,
    estimate_periods,
    find_peaks,
)
from dubovsky.model import (
    DubovskyParams,
    Forcing,
    InitialConditions,
    forcing_eval,
    rhs_x,
    rhs_y,
)
from dubovsky.scheme import gamma_eval, memory_weights, scheme_coefficient
from dubovsky.sim import (
    FractionalOrders,
    GridSpec,
    SchemeOptions,
    SimulationBlowUp,
    Trajectory,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "DubovskyParams",
    "Forcing",
    "FractionalOrders",
    "GridSpec",
    "InitialConditions",
    "PeakList",
    "PeriodEstimate",
    "RegimeReport",
    "RegimeThresholds",
    "SchemeOptions",
    "SimulationBlowUp",
    "Trajectory",
    "classify_regime",
    "estimate_periods",
    "find_peaks",
    "forcing_eval",
    "gamma_eval",
    "memory_weights",
    "rhs_x",
    "rhs_y",
    "scheme_coefficient",
    "simulate",
]
