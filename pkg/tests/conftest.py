from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from abho.core import cycle_graph, mono, path_graph  # noqa: E402
from abho.group import boolean_gec, gmin  # noqa: E402
from abho.metric import UltraChain, build_ultrametric  # noqa: E402


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def u4():
    return build_ultrametric(UltraChain([("1", 2), ("1/2", 2)])).gec


@pytest.fixture
def f2sq():
    return boolean_gec(2)


@pytest.fixture
def g_min():
    return gmin()


@pytest.fixture
def tri():
    return mono(3, "c")


def k2(color: str, pseudo: str = "0"):
    return mono(2, color, pseudo)


# --- acceptance reporting ------------------------------------------------

_results: dict[int, tuple[str, float, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    k, title = m.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        prev = _results.get(k)
        status = "PASS" if rep.outcome == "passed" else "FAIL"
        if prev and prev[0] == "FAIL":
            status = "FAIL"
        dur = (prev[1] if prev else 0.0) + rep.duration
        _results[k] = (status, dur, title)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        status, dur, title = _results[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  ({dur:6.1f}s)  {title}")
