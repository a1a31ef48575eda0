import time
from collections import defaultdict

import pytest

_outcomes = defaultdict(list)
_titles = {}
_started = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_setup(item):
    _started.setdefault("suite", time.perf_counter())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    _titles[number] = title
    if report.when == "call" or (report.when == "setup" and report.failed):
        _outcomes[number].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    elapsed = time.perf_counter() - _started["suite"]
    for number in sorted(_outcomes):
        results = _outcomes[number]
        ok = all(passed for _, passed in results)
        tr.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {_titles[number]}"
                      f"  ({sum(p for _, p in results)}/{len(results)} checks)")
        for name, passed in results:
            if not passed:
                tr.write_line(f"    failed: {name}")
    tr.write_line(f"suite wall time {elapsed:.1f} s ({'PASS' if elapsed < 60 else 'FAIL'}: < 60 s)")
