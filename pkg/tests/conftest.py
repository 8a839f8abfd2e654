import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and (rep.when == "call" or rep.failed):
        _ACCEPTANCE.append((marker.args[0], rep.passed, rep.when))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    results = {}
    for label, passed, when in _ACCEPTANCE:
        results[label] = results.get(label, True) and passed
    terminalreporter.section("acceptance criteria")
    for label in sorted(results, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{'PASS' if results[label] else 'FAIL'}  {label}")
