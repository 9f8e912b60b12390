import pytest

from zetalab.arithmetic import sieve_divisor_tables

from acceptance_log import LINES as ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def small_table():
    return sieve_divisor_tables(20_000)


@pytest.fixture(scope="session")
def table():
    # covers floor(T / 2pi) for T up to 1e5 and N = T^theta for theta <= 1 at T <= 1e5
    return sieve_divisor_tables(200_000)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
