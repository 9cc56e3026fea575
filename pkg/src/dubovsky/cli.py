"""Command-line entry point: ``dubovsky run|analyze|sweep|presets``.

Exit status is 0 on success, 1 on usage or configuration errors and 2 on
runtime failures (blow-up, I/O).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from dubovsky.analysis import RegimeReport, classify_regime
from dubovsky.config import (
    PRESETS,
    ScenarioConfig,
    SweepSpec,
    parse_config,
    parse_sweep,
    preset,
)
from dubovsky.errors import ConfigError, SimulationBlowUp
from dubovsky.export import export_csv, read_csv
from dubovsky.plotting import PlotSpec, render_plot
from dubovsky.sim import GridSpec, Trajectory, simulate

log = logging.getLogger("dubovsky")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dubovsky", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="simulate one scenario")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", metavar="NAME")
    src.add_argument("--config", metavar="FILE", type=Path)
    run.add_argument("--out", metavar="DIR", type=Path)
    run.add_argument("--csv", action="store_true", help="write NAME.csv")
    run.add_argument("--plots", action="store_true", help="write NAME_osc.svg and NAME_phase.svg")
    run.add_argument("--tau", type=float, help="override the time step")

    analyze = sub.add_parser("analyze", help="classify a trajectory CSV")
    analyze.add_argument("--csv", metavar="FILE", type=Path, required=True)
    meta = analyze.add_mutually_exclusive_group()
    meta.add_argument("--preset", metavar="NAME", help="scenario that produced the CSV")
    meta.add_argument("--config", metavar="FILE", type=Path)
    analyze.add_argument("--settle-fraction", type=float)
    analyze.add_argument("--json", metavar="FILE", type=Path, help="also write the report as JSON")

    sweep = sub.add_parser("sweep", help="classify a grid of alpha/beta/delta/omega values")
    sweep.add_argument("--config", metavar="FILE", type=Path, required=True)
    sweep.add_argument("--out", metavar="FILE", type=Path, help="CSV table (default: stdout)")
    sweep.add_argument("--workers", type=int, default=1)

    sub.add_parser("presets", help="list the built-in scenarios")
    return parser


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None


def _load_scenario(preset_name: Optional[str], config_path: Optional[Path]) -> ScenarioConfig:
    if preset_name is not None:
        return preset(preset_name)
    cfg = parse_config(_read_text(config_path))
    if cfg.name is None:
        cfg = dataclasses.replace(cfg, name=config_path.stem)
    return cfg


def run_scenario(cfg: ScenarioConfig) -> Trajectory:
    return simulate(cfg.params, cfg.orders, cfg.forcing, cfg.ic, cfg.grid, cfg.options, name=cfg.name)


def _print_report(report: RegimeReport):
    for line in report.to_lines():
        print(line)


def cmd_run(args) -> int:
    cfg = _load_scenario(args.preset, args.config)
    if args.tau is not None:
        cfg = dataclasses.replace(cfg, grid=GridSpec.from_tau(cfg.grid.T, args.tau))
    out_dir = args.out if args.out is not None else Path(cfg.output.dir)
    want_csv = args.csv or cfg.output.csv
    want_plots = args.plots or cfg.output.plots
    name = cfg.name or "run"

    log.info("running %s: N=%d tau=%g", name, cfg.grid.N, cfg.grid.tau)
    traj = run_scenario(cfg)
    if want_csv or want_plots:
        out_dir.mkdir(parents=True, exist_ok=True)
    if want_csv:
        export_csv(traj, out_dir / f"{name}.csv")
    if want_plots:
        render_plot(traj, PlotSpec("oscillogram"), out_dir / f"{name}_osc.svg")
        render_plot(traj, PlotSpec("phase"), out_dir / f"{name}_phase.svg")

    print(f"name={name}")
    print(f"N={cfg.grid.N}")
    print(f"tau={cfg.grid.tau:.6g}")
    _print_report(classify_regime(traj, thresholds=cfg.thresholds))
    return EXIT_OK


def cmd_analyze(args) -> int:
    traj = read_csv(args.csv)
    thresholds = None
    if args.preset is not None or args.config is not None:
        cfg = _load_scenario(args.preset, args.config)
        traj = dataclasses.replace(
            traj, params=cfg.params, orders=cfg.orders, forcing=cfg.forcing, options=cfg.options
        )
        thresholds = cfg.thresholds
    kwargs = {"thresholds": thresholds} if thresholds is not None else {}
    report = classify_regime(traj, settle_fraction=args.settle_fraction, **kwargs)
    _print_report(report)
    if args.json is not None:
        args.json.write_text(json.dumps(report.as_dict(), indent=2) + "\n", encoding="utf-8")
    return EXIT_OK


SWEEP_COLUMNS = (
    "index", "alpha", "beta", "delta", "omega", "regime", "dominant_period",
    "secondary_period", "amplitude_trend", "settled_trend", "closure_ratio",
)


def sweep_point(cfg: ScenarioConfig) -> RegimeReport:
    try:
        traj = run_scenario(cfg)
    except SimulationBlowUp:
        return RegimeReport("divergent")
    return classify_regime(traj, thresholds=cfg.thresholds)


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[str]:
    """CSV lines (header first), one row per point in product order."""
    scenarios = [spec.scenario(p) for p in spec.points()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(sweep_point, scenarios))
    else:
        reports = [sweep_point(s) for s in scenarios]

    def fmt(v):
        return "" if v is None else (repr(v) if isinstance(v, float) else str(v))

    lines = [",".join(SWEEP_COLUMNS)]
    for i, (cfg, rep) in enumerate(zip(scenarios, reports)):
        cosine = cfg.forcing.kind == "cosine"
        row = (
            i, cfg.orders.alpha, cfg.orders.beta,
            cfg.forcing.delta if cosine else 0.0,
            cfg.forcing.omega if cosine else None,
            rep.regime, rep.dominant_period, rep.secondary_period,
            rep.amplitude_trend, rep.settled_trend, rep.closure_ratio,
        )
        lines.append(",".join(fmt(v) for v in row))
    return lines


def cmd_sweep(args) -> int:
    if args.workers < 1:
        raise UsageError("--workers must be >= 1")
    spec = parse_sweep(_read_text(args.config))
    text = "\n".join(run_sweep(spec, args.workers)) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_presets(args) -> int:
    for name, (desc, _) in PRESETS.items():
        print(f"{name}\t{desc}")
    return EXIT_OK


COMMANDS = {"run": cmd_run, "analyze": cmd_analyze, "sweep": cmd_sweep, "presets": cmd_presets}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SimulationBlowUp as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
