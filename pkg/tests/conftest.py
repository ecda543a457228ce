from fractions import Fraction

import pytest

from inflatecube.construct import make_params

# the six parameter values singled out by the acceptance criteria
ACCEPTANCE_EPS = [Fraction(1, 10), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3),
                  Fraction(2, 5), Fraction(49, 100)]


@pytest.fixture
def quarter():
    return make_params(Fraction(1, 4))


_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
