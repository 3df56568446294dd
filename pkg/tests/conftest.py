import pytest

from apery_congruences.sequences import apery_upto

_acceptance: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def apery_table():
    # Covers A_{2n+1} for n <= 500, the largest index any test touches.
    return apery_upto(1002)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
