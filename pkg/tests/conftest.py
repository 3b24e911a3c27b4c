import pytest

# criterion number -> (description, [outcomes])
_ACCEPTANCE: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, description): tags an acceptance-criterion test"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    num, description = marker.args
    _ACCEPTANCE.setdefault(num, (description, []))[1].append(report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        description, outcomes = _ACCEPTANCE[num]
        status = "PASS" if outcomes and all(outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {num} ({description}): {status}")
