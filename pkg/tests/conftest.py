import sys
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from etastar.fixtures import random_configuration

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def configurations(draw, max_points=7, max_dim=3, full_span=True):
    """Seeded random configurations; hypothesis only chooses the seed."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_configuration(random.Random(seed), max_points, max_dim, full_span=full_span)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
