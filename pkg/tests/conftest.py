import numpy as np
import pytest

from nframe import AmbientSpace, build_quotient

# lines recorded by the acceptance module, echoed once at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def e3_space():
    """R^3 with the single anchor e3, so X_F is the e1/e2 plane."""
    space = AmbientSpace(3, 2)
    return build_quotient(space, [[0.0, 0.0, 1.0]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
