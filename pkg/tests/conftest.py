import pytest

# criterion number -> list of (passed, detail) per test
_RESULTS: dict[int, list[tuple[bool, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    details = [v for k, v in item.user_properties if k == "detail"]
    detail = "; ".join(details)
    if report.failed:
        reason = str(call.excinfo.value).splitlines()[0] if call.excinfo else "failed"
        detail = f"{detail}; {reason}" if detail else reason
    _RESULTS.setdefault(marker.args[0], []).append((report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        rows = _RESULTS[number]
        ok = all(passed for passed, _ in rows)
        detail = " | ".join(d for _, d in rows if d)
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
