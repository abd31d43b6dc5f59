import time

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("exact", deadline=None, max_examples=40)
settings.load_profile("exact")

_SESSION_START = time.perf_counter()
_RESULTS: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one acceptance criterion")
    config.lodaydef_start = _SESSION_START


def pytest_collection_modifyitems(session, config, items):
    # the wall-clock criterion has to observe the whole run
    last = [it for it in items if it.get_closest_marker("run_last")]
    items[:] = [it for it in items if not it.get_closest_marker("run_last")] + last


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        status = "PASS" if rep.passed else ("SKIP" if rep.skipped else "FAIL")
        _RESULTS[number] = (title, status, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, status, duration = _RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}  ({duration:.2f} s)")


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
