import pytest

from kaonic.bell import measured_preset
from kaonic.states import PhysParams

EPSILONS = [0j, measured_preset(), 0.1 + 0.05j]


@pytest.fixture
def params():
    return PhysParams()


@pytest.fixture(params=EPSILONS, ids=["cp-conserving", "measured-delta", "complex"])
def any_params(request):
    return PhysParams(epsilon=request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
