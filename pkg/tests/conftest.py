import pytest

_criteria: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        cid, text = marker.args
        _criteria.setdefault(cid, []).append((text, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_criteria, key=lambda c: (int(c.rstrip("abcdefghi()")), c)):
        for text, outcome in _criteria[cid]:
            status = "PASS" if outcome == "passed" else "FAIL"
            tr.write_line(f"[{status}] criterion {cid}: {text}")
