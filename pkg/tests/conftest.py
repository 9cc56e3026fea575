import pytest

from dubovsky.cli import run_scenario
from dubovsky.config import PRESETS, preset

_cache = {}


def preset_run(name):
    """Simulated trajectory of a built-in preset, computed once per session."""
    if name not in _cache:
        _cache[name] = run_scenario(preset(name))
    return _cache[name]


@pytest.fixture(params=list(PRESETS))
def any_preset(request):
    return request.param, preset_run(request.param)


# --- acceptance summary -----------------------------------------------------

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    failed = rep.failed or (rep.when == "call" and rep.outcome != "passed")
    prev = _criteria.get(number, (title, True))
    if rep.when == "call" or failed:
        _criteria[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
