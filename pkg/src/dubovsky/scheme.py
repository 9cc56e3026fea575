"""Coefficients and memory weights of the L1-type explicit scheme."""

from __future__ import annotations

import math

import numpy as np

from dubovsky.errors import ConfigError


def check_order(order: float, name: str = "order") -> float:
    """Validate a fractional order and return it as a float.

    Orders lie in (0, 1]; the value 1 is the classical (integer) limit.
    """
    order = float(order)
    if not math.isfinite(order) or not 0.0 < order <= 1.0:
        raise ConfigError(f"{name} must lie in (0, 1], got {order!r}")
    return order


def gamma_eval(x: float) -> float:
    """Euler's gamma function for positive real arguments."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"gamma_eval needs a positive finite argument, got {x!r}")
    return math.gamma(x)


def scheme_coefficient(order: float, tau: float) -> float:
    """Return ``tau**(-order) / Gamma(2 - order)``.

    This is the factor multiplying the leading difference of the discrete
    fractional derivative; for ``order == 1`` it reduces to ``1 / tau``.
    """
    order = check_order(order)
    tau = float(tau)
    if not math.isfinite(tau) or tau <= 0.0:
        raise ValueError(f"tau must be positive, got {tau!r}")
    return tau ** (-order) / gamma_eval(2.0 - order)


def memory_weights(order: float, count: int) -> np.ndarray:
    """Weights ``w_k = (1 + k)**(1 - order) - k**(1 - order)`` for k = 1..count.

    Element ``i`` of the returned array holds ``w_{i+1}``. The array is
    read-only so one instance can be shared between runs.
    """
    order = check_order(order)
    if count < 0:
        raise ValueError(f"count must be non-negative, got {count}")
    k = np.arange(1, count + 1, dtype=np.float64)
    mu = 1.0 - order
    weights = (1.0 + k) ** mu - k**mu
    weights.setflags(write=False)
    return weights
