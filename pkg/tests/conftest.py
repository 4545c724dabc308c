import pytest

from bentpack.boolfn import BooleanFunction
from bentpack.search import enumerate_plateaued, maiorana_mcfarland_corpus

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def bent4():
    return list(enumerate_plateaued(4, 0))


@pytest.fixture(scope="session")
def plateaued_small():
    """Every s-plateaued function for 2 <= n <= 4, keyed by (n, s)."""
    out = {}
    for n in (2, 3, 4):
        for s in range(n % 2, n + 1, 2):
            out[(n, s)] = list(enumerate_plateaued(n, s))
    return out


@pytest.fixture(scope="session")
def mm6():
    return list(maiorana_mcfarland_corpus(3, 100, seed=2024))


@pytest.fixture(scope="session")
def mm8():
    return list(maiorana_mcfarland_corpus(4, 100, seed=2025))


@pytest.fixture
def ip4():
    """x1x2 + x3x4."""
    return BooleanFunction.from_anf(4, [(1, 2), (3, 4)])


@pytest.fixture
def majority3():
    return BooleanFunction.from_string("00010111")


@pytest.fixture
def cubic3():
    """x1x2x3, spectrum magnitudes {2, 6}."""
    return BooleanFunction.from_string("00000001")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        ACCEPTANCE_RESULTS[report.nodeid] = report.outcome
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance.py" in report.nodeid:
        ACCEPTANCE_RESULTS[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, outcome in ACCEPTANCE_RESULTS.items():
        name = nodeid.split("::")[-1]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
