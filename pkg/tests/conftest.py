import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, label): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, label = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[n] = (label, "PASS" if rep.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        label, verdict = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {label}")
