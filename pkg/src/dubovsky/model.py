"""Right-hand side of the generalized Dubovsky system and its forcing."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from dubovsky.errors import ConfigError

ForcingKind = Literal["zero", "cosine", "tabulated"]


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class DubovskyParams:
    """Economic constants of the model.

    Attributes:
        n: accumulation rate, strictly between 0 and 1.
        lam: statistical coefficient lambda, positive.
        x_star: equilibrium efficiency of new technologies.
        y_star: equilibrium return on assets.
    """

    n: float = 0.2
    lam: float = 2.25
    x_star: float = 1.3
    y_star: float = 0.5

    def __post_init__(self):
        for name in ("n", "lam", "x_star", "y_star"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if not 0.0 < self.n < 1.0:
            raise ConfigError(f"n must lie in (0,1), got {self.n!r}")
        if self.lam <= 0.0:
            raise ConfigError(f"lambda must be positive, got {self.lam!r}")


@dataclass(frozen=True)
class InitialConditions:
    a: float = 1.35
    b: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "a", _finite("a", self.a))
        object.__setattr__(self, "b", _finite("b", self.b))


@dataclass(frozen=True)
class Forcing:
    """External impact f(t) acting on the y equation.

    Use the ``zero``, ``cosine`` and ``tabulated`` constructors rather than
    filling the fields by hand.
    """

    kind: ForcingKind = "zero"
    delta: float = 0.0
    omega: float = 1.0
    samples: tuple[float, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if self.kind not in ("zero", "cosine", "tabulated"):
            raise ConfigError(f"unknown forcing kind {self.kind!r}")
        object.__setattr__(self, "delta", _finite("forcing.delta", self.delta))
        object.__setattr__(self, "omega", _finite("forcing.omega", self.omega))
        object.__setattr__(self, "samples", tuple(float(s) for s in self.samples))
        if self.kind == "cosine":
            if self.delta < 0.0:
                raise ConfigError(f"forcing.delta must be >= 0, got {self.delta!r}")
            if self.omega <= 0.0:
                raise ConfigError(f"forcing.omega must be > 0, got {self.omega!r}")
        if self.kind == "tabulated":
            if not all(math.isfinite(s) for s in self.samples):
                raise ConfigError("forcing.samples must all be finite")

    @classmethod
    def zero(cls) -> Forcing:
        return cls("zero")

    @classmethod
    def cosine(cls, delta: float, omega: float) -> Forcing:
        return cls("cosine", delta=delta, omega=omega)

    @classmethod
    def tabulated(cls, samples) -> Forcing:
        return cls("tabulated", samples=tuple(samples))

    @property
    def is_zero(self) -> bool:
        if self.kind == "zero":
            return True
        if self.kind == "cosine":
            return self.delta == 0.0
        return not any(self.samples)

    def sample(self, times: np.ndarray) -> np.ndarray:
        """Evaluate the forcing on every node of a grid."""
        times = np.asarray(times, dtype=np.float64)
        if self.kind == "zero":
            return np.zeros_like(times)
        if self.kind == "cosine":
            return self.delta * np.cos(self.omega * times)
        if len(self.samples) < len(times):
            raise ConfigError(
                f"tabulated forcing has {len(self.samples)} samples, "
                f"grid needs {len(times)}"
            )
        return np.asarray(self.samples[: len(times)], dtype=np.float64)


def rhs_x(x: float, y: float, p: DubovskyParams) -> float:
    """Rate of the technology-efficiency equation, -lam*n*x*(x-1)*(y-y*)."""
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite state ({x!r}, {y!r})")
    return -p.lam * p.n * x * (x - 1.0) * (y - p.y_star)


def rhs_y(x: float, y: float, p: DubovskyParams, f_value: float = 0.0) -> float:
    """Rate of the return-on-assets equation, n*(1-n)*y**2*(x-x*) + f."""
    if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(f_value)):
        raise ValueError(f"non-finite input ({x!r}, {y!r}, f={f_value!r})")
    return p.n * (1.0 - p.n) * y * y * (x - p.x_star) + f_value


def forcing_eval(f: Forcing, t: float, grid_index: int = 0) -> float:
    if f.kind == "zero":
        return 0.0
    if f.kind == "cosine":
        return f.delta * math.cos(f.omega * t)
    if not 0 <= grid_index < len(f.samples):
        raise ConfigError(
            f"grid index {grid_index} outside tabulated forcing "
            f"(0..{len(f.samples) - 1})"
        )
    return f.samples[grid_index]
