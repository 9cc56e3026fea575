import numpy as np
import pytest

from conftest import preset_run
from dubovsky.errors import ConfigError
from dubovsky.export import export_csv, format_csv, read_csv
from dubovsky.model import DubovskyParams, Forcing, InitialConditions
from dubovsky.sim import FractionalOrders, GridSpec, simulate


def test_equilibrium_csv(tmp_path):
    traj = simulate(DubovskyParams(), FractionalOrders(0.5, 0.5), Forcing.zero(),
                    InitialConditions(1.3, 0.5), GridSpec(3.0, 3))
    path = tmp_path / "eq.csv"
    export_csv(traj, path)
    raw = path.read_bytes()
    assert raw.endswith(b"\n") and b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "t,x,y"
    assert lines[1:] == ["0.0,1.3,0.5", "1.0,1.3,0.5", "2.0,1.3,0.5", "3.0,1.3,0.5"]


def test_roundtrip_bit_exact(tmp_path):
    traj = preset_run("fig4")
    path = tmp_path / "fig4.csv"
    export_csv(traj, path)
    back = read_csv(path)
    assert len(back) == traj.grid.N + 1
    assert np.array_equal(back.times, traj.times)
    assert np.array_equal(back.xs, traj.xs)
    assert np.array_equal(back.ys, traj.ys)
    assert back.forcing is None and back.name == "fig4"


def test_byte_deterministic():
    a = format_csv(preset_run("fig5"))
    b = format_csv(preset_run("fig5"))
    assert a.encode() == b.encode()


def test_unwritable(tmp_path):
    with pytest.raises(OSError):
        export_csv(preset_run("fig1"), tmp_path / "missing" / "x.csv")


@pytest.mark.parametrize(
    "content", ["a,b,c\n1,2,3\n", "t,x,y\n1,2\n", "t,x,y\n1,2,zz\n", "t,x,y\n0,1,1\n"]
)
def test_read_rejects_malformed(tmp_path, content):
    path = tmp_path / "bad.csv"
    path.write_text(content)
    with pytest.raises(ConfigError):
        read_csv(path)
