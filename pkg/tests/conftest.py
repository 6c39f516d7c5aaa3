import pytest

from esplab import RngStream, ReservoirSystem, make_uniform_random

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def desk_reservoir():
    """N = 50 reservoir shared by the desk-scale experiments (seed 0)."""
    return ReservoirSystem.random(50, 1, RngStream(0, 0))


@pytest.fixture(scope="session")
def weak_input():
    """Random input of length 500, amplitude 0.03."""
    return make_uniform_random(500, 1, 0.03, RngStream(0, 1))
