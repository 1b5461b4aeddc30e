import os
import re
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    prev = _CRITERIA.get(key, ("PASS", 0.0))
    status = prev[0] if report.passed or report.skipped else "FAIL"
    if report.when == "call" and report.skipped:
        status = "SKIP"
    _CRITERIA[key] = (status, prev[1] + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (n, name), (status, secs) in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {n:2d} {status}  {name.replace('_', ' ')}  ({secs:.1f}s)")
