import pytest

_ACCEPTANCE: list[tuple[str, str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _ACCEPTANCE.append((name, report.outcome.upper(), f"{report.duration:.2f}s"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _ACCEPTANCE:
        terminalreporter.write_line(f"{outcome:6} {name} ({duration})")


@pytest.fixture
def canonical5():
    from hjintervals import canonical_weights

    return canonical_weights(5)
