import time

import pytest

_RESULTS: dict[int, dict] = {}
_TITLES: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    _TITLES[n] = title
    slot = _RESULTS.setdefault(n, {"passed": 0, "failed": [], "skipped": 0, "seconds": 0.0})
    if rep.when == "call":
        slot["seconds"] += rep.duration
        if rep.passed:
            slot["passed"] += 1
        elif rep.failed:
            slot["failed"].append(item.callspec.id if hasattr(item, "callspec") else item.name)
    elif rep.when == "setup" and rep.skipped:
        slot["skipped"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        r = _RESULTS[n]
        status = "FAIL" if r["failed"] else ("PASS" if r["passed"] else "SKIP")
        line = f"{status}  criterion {n:>2}: {_TITLES[n]}  ({r['passed']} passed"
        if r["failed"]:
            line += f", {len(r['failed'])} failed: {', '.join(r['failed'])}"
        if r["skipped"]:
            line += f", {r['skipped']} excluded"
        line += f"; {r['seconds']:.1f} s)"
        terminalreporter.write_line(line)
