import pytest

from masonry_modal import AxialState, paper_beam

PAPER_FORCES = (-300000.0, -500000.0, -800000.0)


@pytest.fixture
def spec():
    return paper_beam()


@pytest.fixture
def axial(spec):
    return AxialState.from_force(-500000.0, spec)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
