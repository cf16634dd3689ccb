import pytest

from aftkit.numtheory import build_mobius_table


@pytest.fixture(scope="session")
def table():
    """Sieve large enough for every sum in the suite (up to 10^6)."""
    return build_mobius_table(10**6)


@pytest.fixture(scope="session")
def small_table():
    return build_mobius_table(10**4)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(number, title, ok, detail)``."""

    def record(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  [{detail}]"
        ACCEPTANCE_LINES.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
