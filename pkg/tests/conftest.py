import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hyperbicomb.spaces import star_tree

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# filled by tests/test_acceptance.py, printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def tripod():
    """Centre o (vertex 0) with unit legs to x (1), y (2) and z (3)."""
    return star_tree([1.0, 1.0, 1.0])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
