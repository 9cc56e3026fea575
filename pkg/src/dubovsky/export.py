"""CSV export and import of trajectories (header ``t,x,y``, LF endings)."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from dubovsky.errors import ConfigError
from dubovsky.sim import Trajectory


def format_csv(traj: Trajectory) -> str:
    # repr gives the shortest string that round-trips the double exactly
    rows = ["t,x,y"]
    rows.extend(
        f"{t!r},{x!r},{y!r}"
        for t, x, y in zip(traj.times.tolist(), traj.xs.tolist(), traj.ys.tolist())
    )
    return "\n".join(rows) + "\n"


def export_csv(traj: Trajectory, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(traj))


def read_csv(path) -> Trajectory:
    """Read a ``t,x,y`` file back into a Trajectory without run metadata."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["t", "x", "y"]:
            raise ConfigError(f"{path}: expected header 't,x,y', got {header!r}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise ConfigError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise ConfigError(f"{path}:{lineno}: non-numeric value in {row!r}") from None
    if len(rows) < 3:
        raise ConfigError(f"{path}: need at least 3 data rows")
    data = np.array(rows)
    return Trajectory(times=data[:, 0], xs=data[:, 1], ys=data[:, 2], name=path.stem)
