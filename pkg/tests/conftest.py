import numpy as np
import pytest

from copson import WeightFamily


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


FAMILIES = {
    "unit": WeightFamily.unit(),
    "powerdiff2": WeightFamily.power_diff(2),
    "powerdiff1.5": WeightFamily.power_diff(1.5),
    "powerkernel2": WeightFamily.power_kernel(2),
    "powerkernel3": WeightFamily.power_kernel(3),
}


@pytest.fixture(params=sorted(FAMILIES))
def family(request):
    return FAMILIES[request.param]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
