"""Oscillogram and phase-portrait figures written as standalone SVG."""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from typing import Literal, Optional

import matplotlib
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from dubovsky.sim import Trajectory

PlotKind = Literal["oscillogram", "phase"]

# gids of the data lines, used by tests to locate the curves in the SVG
GID_X = "series-x"
GID_Y = "series-y"
GID_PHASE = "phase-curve"

_RC = {
    "svg.fonttype": "none",
    "svg.hashsalt": "dubovsky",
    "path.simplify": False,
    "font.size": 11,
    "axes.grid": True,
    "grid.alpha": 0.3,
}
_DOCTYPE = re.compile(r"<!DOCTYPE[^>]*>\s*", re.S)


@dataclass(frozen=True)
class PlotSpec:
    kind: PlotKind = "phase"
    width: int = 800
    height: int = 600
    xlim: Optional[tuple[float, float]] = None
    ylim: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if self.kind not in ("oscillogram", "phase"):
            raise ValueError(f"unknown plot kind {self.kind!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("plot dimensions must be positive")


def _title(traj: Trajectory) -> str:
    parts = []
    if traj.name:
        parts.append(traj.name)
    if traj.orders is not None:
        parts.append(f"α={traj.orders.alpha:g}, β={traj.orders.beta:g}")
    f = traj.forcing
    if f is not None:
        if f.kind == "cosine" and not f.is_zero:
            parts.append(f"f=δcos(ωt), δ={f.delta:g}, ω={f.omega:g}")
        elif f.is_zero:
            parts.append("f=0")
        else:
            parts.append("f tabulated")
    return "   ".join(parts)


def build_figure(traj: Trajectory, spec: PlotSpec) -> Figure:
    # SVG output is in points: 72 per inch
    fig = Figure(figsize=(spec.width / 72.0, spec.height / 72.0), dpi=72)
    if spec.kind == "phase":
        ax = fig.add_subplot()
        ax.plot(traj.xs, traj.ys, lw=1.0, color="tab:blue", gid=GID_PHASE)
        ax.plot([traj.xs[0]], [traj.ys[0]], "o", color="tab:green", ms=4, label="start")
        ax.plot([traj.xs[-1]], [traj.ys[-1]], "s", color="tab:red", ms=4, label="end")
        ax.set_xlabel("x (efficiency of new technologies)")
        ax.set_ylabel("y (return on assets)")
        ax.legend(loc="best", fontsize="small")
        axes = [ax]
    else:
        ax_x, ax_y = fig.subplots(2, 1, sharex=True)
        ax_x.plot(traj.times, traj.xs, lw=1.0, color="tab:blue", label="x(t)", gid=GID_X)
        ax_y.plot(traj.times, traj.ys, lw=1.0, color="tab:orange", label="y(t)", gid=GID_Y)
        ax_x.set_ylabel("x")
        ax_y.set_ylabel("y")
        ax_y.set_xlabel("t")
        axes = [ax_x, ax_y]
        for ax in axes:
            ax.legend(loc="upper right", fontsize="small")
    for ax in axes:
        if spec.xlim is not None:
            ax.set_xlim(*spec.xlim)
        if spec.ylim is not None:
            ax.set_ylim(*spec.ylim)
    title = _title(traj)
    if title:
        fig.suptitle(title, fontsize="medium")
    fig.set_layout_engine("tight")
    return fig


def render_svg(traj: Trajectory, spec: PlotSpec) -> str:
    if len(traj) < 2:
        raise ValueError("cannot plot a trajectory with fewer than 2 points")
    with matplotlib.rc_context(_RC):
        fig = build_figure(traj, spec)
        buf = io.StringIO()
        FigureCanvasSVG(fig).print_svg(buf, metadata=dict.fromkeys(("Creator", "Date", "Format", "Type")))
    # the DOCTYPE points at an external DTD; drop it to keep the file standalone
    return _DOCTYPE.sub("", buf.getvalue(), count=1)


def render_plot(traj: Trajectory, spec: PlotSpec, path) -> None:
    svg = render_svg(traj, spec)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
