"""Scenario configuration: built-in presets, TOML parsing and serialization.

A config file is TOML. Top-level keys::

    name, preset, n, lambda, x_star, y_star, alpha, beta, a, b,
    T, N, tau, sum_bound, forcing_scale

plus the tables ``[forcing]`` (kind, delta, omega, samples),
``[analysis]`` (the fields of RegimeThresholds) and ``[output]``
(dir, csv, plots). ``forcing.kind = "cosine"`` at top level is the same as
the table form. Keys that are absent come from the preset when one is
named, otherwise from the fig1 scenario. Give at most one of N and tau.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import tomli
import tomli_w

from dubovsky.analysis import RegimeThresholds
from dubovsky.errors import ConfigError, UnknownPresetError
from dubovsky.model import DubovskyParams, Forcing, InitialConditions
from dubovsky.sim import FractionalOrders, GridSpec, SchemeOptions

DEFAULT_TAU = 0.05


@dataclass(frozen=True)
class OutputSpec:
    dir: str = "."
    csv: bool = False
    plots: bool = False


@dataclass(frozen=True)
class ScenarioConfig:
    params: DubovskyParams = DubovskyParams()
    orders: FractionalOrders = FractionalOrders()
    forcing: Forcing = Forcing.zero()
    ic: InitialConditions = InitialConditions()
    grid: GridSpec = GridSpec(250.0, 5000)
    options: SchemeOptions = SchemeOptions()
    thresholds: RegimeThresholds = RegimeThresholds()
    output: OutputSpec = OutputSpec()
    name: Optional[str] = None


def _kondratiev_scenario(name, alpha, beta, forcing) -> ScenarioConfig:
    return ScenarioConfig(
        params=DubovskyParams(n=0.2, lam=2.25, x_star=1.3, y_star=0.5),
        orders=FractionalOrders(alpha, beta),
        forcing=forcing,
        ic=InitialConditions(a=1.35, b=0.5),
        grid=GridSpec.from_tau(250.0, DEFAULT_TAU),
        name=name,
    )


PRESETS: dict[str, tuple[str, ScenarioConfig]] = {
    "fig1": (
        "classical model, no forcing: center",
        _kondratiev_scenario("fig1", 1.0, 1.0, Forcing.zero()),
    ),
    "fig2": (
        "classical model, investment cycles delta=0.01 omega=1",
        _kondratiev_scenario("fig2", 1.0, 1.0, Forcing.cosine(0.01, 1.0)),
    ),
    "fig3": (
        "alpha=0.8 beta=1, no forcing: stable focus",
        _kondratiev_scenario("fig3", 0.8, 1.0, Forcing.zero()),
    ),
    "fig4": (
        "alpha=0.8 beta=0.6, delta=0.5 omega=2: limit cycle",
        _kondratiev_scenario("fig4", 0.8, 0.6, Forcing.cosine(0.5, 2.0)),
    ),
    "fig5": (
        "alpha=beta=0.8, delta=0.5 omega=2: limit cycle",
        _kondratiev_scenario("fig5", 0.8, 0.8, Forcing.cosine(0.5, 2.0)),
    ),
    "fig6": (
        "alpha=beta=0.1, delta=0.5 omega=2: limit cycle",
        _kondratiev_scenario("fig6", 0.1, 0.1, Forcing.cosine(0.5, 2.0)),
    ),
}


def preset(name: str) -> ScenarioConfig:
    try:
        return PRESETS[name][1]
    except KeyError:
        raise UnknownPresetError(
            f"unknown preset {name!r}; valid presets: {', '.join(PRESETS)}"
        ) from None


# file key -> (section object, attribute)
_TOP_KEYS = {
    "n": ("params", "n"),
    "lambda": ("params", "lam"),
    "x_star": ("params", "x_star"),
    "y_star": ("params", "y_star"),
    "alpha": ("orders", "alpha"),
    "beta": ("orders", "beta"),
    "a": ("ic", "a"),
    "b": ("ic", "b"),
    "sum_bound": ("options", "sum_bound"),
    "forcing_scale": ("options", "forcing_scale"),
}
_STRING_KEYS = {"sum_bound", "forcing_scale", "name", "preset"}
_FORCING_KEYS = {"kind", "delta", "omega", "samples"}
_ANALYSIS_KEYS = {f.name for f in dataclasses.fields(RegimeThresholds)}
_OUTPUT_KEYS = {"dir": str, "csv": bool, "plots": bool}
_TABLES = {"forcing", "analysis", "output"}


def _number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _string(key: str, value: Any) -> str:
    if not isinstance(value, str):
        raise ConfigError(f"{key} must be a string, got {value!r}")
    return value


def _table(data: dict, key: str, allowed) -> dict:
    table = data.get(key, {})
    if not isinstance(table, dict):
        raise ConfigError(f"{key} must be a table")
    unknown = sorted(set(table) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key(s) in [{key}]: {', '.join(unknown)}")
    return table


def config_from_mapping(data: dict, extra_tables: frozenset = frozenset()) -> ScenarioConfig:
    """Build a validated config from already-parsed TOML data."""
    allowed = set(_TOP_KEYS) | _STRING_KEYS | {"T", "N", "tau"} | _TABLES | set(extra_tables)
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"unknown key(s): {', '.join(unknown)}")

    base = preset(_string("preset", data["preset"])) if "preset" in data else PRESETS["fig1"][1]
    if "name" in data:
        name = _string("name", data["name"])
    else:
        name = base.name if "preset" in data else None

    try:
        parts = {
            "params": dataclasses.asdict(base.params),
            "orders": dataclasses.asdict(base.orders),
            "ic": dataclasses.asdict(base.ic),
            "options": dataclasses.asdict(base.options),
        }
        for key, (section, attr) in _TOP_KEYS.items():
            if key in data:
                value = data[key]
                parts[section][attr] = (
                    _string(key, value) if key in _STRING_KEYS else _number(key, value)
                )

        ftable = _table(data, "forcing", _FORCING_KEYS)
        forcing = _merge_forcing(base.forcing, ftable)

        T = _number("T", data["T"]) if "T" in data else base.grid.T
        if "N" in data and "tau" in data:
            raise ConfigError("give at most one of N and tau")
        if "N" in data:
            N = data["N"]
            if isinstance(N, bool) or not isinstance(N, int):
                raise ConfigError(f"N must be an integer, got {N!r}")
            grid = GridSpec(T, N)
        elif "tau" in data:
            grid = GridSpec.from_tau(T, _number("tau", data["tau"]))
        elif "T" in data:
            grid = GridSpec.from_tau(T, base.grid.tau)
        else:
            grid = base.grid

        atable = _table(data, "analysis", _ANALYSIS_KEYS)
        thresholds = dataclasses.replace(
            base.thresholds, **{k: _number(f"analysis.{k}", v) for k, v in atable.items()}
        )

        otable = _table(data, "output", _OUTPUT_KEYS)
        out_fields = {}
        for key, value in otable.items():
            if not isinstance(value, _OUTPUT_KEYS[key]):
                raise ConfigError(f"output.{key} has the wrong type: {value!r}")
            out_fields[key] = value
        output = dataclasses.replace(base.output, **out_fields)

        return ScenarioConfig(
            params=DubovskyParams(**parts["params"]),
            orders=FractionalOrders(**parts["orders"]),
            forcing=forcing,
            ic=InitialConditions(**parts["ic"]),
            grid=grid,
            options=SchemeOptions(**parts["options"]),
            thresholds=thresholds,
            output=output,
            name=name,
        )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _merge_forcing(base: Forcing, table: dict) -> Forcing:
    kind = _string("forcing.kind", table["kind"]) if "kind" in table else base.kind
    delta = _number("forcing.delta", table["delta"]) if "delta" in table else base.delta
    omega = _number("forcing.omega", table["omega"]) if "omega" in table else base.omega
    if "samples" in table:
        if not isinstance(table["samples"], list):
            raise ConfigError("forcing.samples must be an array of numbers")
        samples = tuple(_number("forcing.samples", v) for v in table["samples"])
    else:
        samples = base.samples
    if kind == "zero":
        return Forcing.zero()
    if kind == "cosine":
        return Forcing.cosine(delta, omega)
    if kind == "tabulated":
        return Forcing.tabulated(samples)
    raise ConfigError(f"forcing.kind must be zero, cosine or tabulated, got {kind!r}")


def load_toml(text: str) -> dict:
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        # message already carries "(at line L, column C)"
        raise ConfigError(f"syntax error: {exc}") from None


def parse_config(text: str) -> ScenarioConfig:
    return config_from_mapping(load_toml(text))


def config_to_mapping(config: ScenarioConfig) -> dict:
    """Fully explicit mapping; never refers to a preset."""
    p, o, ic, opts = config.params, config.orders, config.ic, config.options
    data: dict[str, Any] = {}
    if config.name is not None:
        data["name"] = config.name
    data.update(
        n=p.n, **{"lambda": p.lam}, x_star=p.x_star, y_star=p.y_star,
        alpha=o.alpha, beta=o.beta, a=ic.a, b=ic.b,
        T=config.grid.T, N=config.grid.N,
        sum_bound=opts.sum_bound, forcing_scale=opts.forcing_scale,
    )
    f = config.forcing
    forcing: dict[str, Any] = {"kind": f.kind}
    if f.kind == "cosine":
        forcing.update(delta=f.delta, omega=f.omega)
    elif f.kind == "tabulated":
        forcing["samples"] = list(f.samples)
    data["forcing"] = forcing
    data["analysis"] = dataclasses.asdict(config.thresholds)
    data["output"] = dataclasses.asdict(config.output)
    return data


def serialize_config(config: ScenarioConfig) -> str:
    return tomli_w.dumps(config_to_mapping(config))


# --- sweeps -----------------------------------------------------------------

SWEEP_KEYS = ("alpha", "beta", "delta", "omega")


@dataclass(frozen=True)
class SweepSpec:
    base: ScenarioConfig
    ranges: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def points(self) -> list[dict[str, float]]:
        """Cartesian product of the ranges, last key varying fastest."""
        import itertools

        keys = [k for k in SWEEP_KEYS if k in self.ranges]
        return [
            dict(zip(keys, combo))
            for combo in itertools.product(*(self.ranges[k] for k in keys))
        ]

    def scenario(self, point: dict[str, float]) -> ScenarioConfig:
        cfg = self.base
        orders = FractionalOrders(
            point.get("alpha", cfg.orders.alpha), point.get("beta", cfg.orders.beta)
        )
        forcing = cfg.forcing
        if "delta" in point or "omega" in point:
            if forcing.kind == "tabulated":
                raise ConfigError("cannot sweep delta/omega over tabulated forcing")
            forcing = Forcing.cosine(
                point.get("delta", forcing.delta if forcing.kind == "cosine" else 0.0),
                point.get("omega", forcing.omega),
            )
        return dataclasses.replace(cfg, orders=orders, forcing=forcing)


def _expand_range(key: str, spec: Any) -> tuple[float, ...]:
    if isinstance(spec, list):
        values = tuple(_number(f"sweep.{key}", v) for v in spec)
    elif isinstance(spec, dict):
        extra = set(spec) - {"start", "stop", "num"}
        if extra or len(spec) != 3:
            raise ConfigError(f"sweep.{key} table needs exactly start, stop, num")
        start = _number(f"sweep.{key}.start", spec["start"])
        stop = _number(f"sweep.{key}.stop", spec["stop"])
        num = spec["num"]
        if isinstance(num, bool) or not isinstance(num, int) or num < 1:
            raise ConfigError(f"sweep.{key}.num must be a positive integer")
        if num == 1:
            values = (start,)
        else:
            step = (stop - start) / (num - 1)
            values = tuple(start + i * step for i in range(num - 1)) + (stop,)
    else:
        raise ConfigError(f"sweep.{key} must be an array or a start/stop/num table")
    if not values:
        raise ConfigError(f"sweep.{key} is empty")
    if not all(math.isfinite(v) for v in values):
        raise ConfigError(f"sweep.{key} values must be finite")
    return values


def parse_sweep(text: str) -> SweepSpec:
    """Scenario config plus a ``[sweep]`` table of ranges over alpha, beta, delta, omega.

    Each range is an array of values or a ``{start, stop, num}`` table.
    """
    data = load_toml(text)
    table = _table(data, "sweep", SWEEP_KEYS)
    if not table:
        raise ConfigError("[sweep] needs at least one of: " + ", ".join(SWEEP_KEYS))
    base = config_from_mapping(data, extra_tables=frozenset({"sweep"}))
    ranges = {k: _expand_range(k, v) for k, v in table.items()}
    spec = SweepSpec(base=base, ranges=ranges)
    # validate every point now rather than inside the workers
    for point in spec.points():
        try:
            spec.scenario(point)
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"sweep point {point}: {exc}") from exc
    return spec
