import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from framequant.hilbert import HilbertSpace

settings.register_profile(
    "default",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

ODD_DIMS = tuple(range(3, 32, 2))
SMALL_DIMS = (3, 5, 7)

odd_dims = st.integers(min_value=1, max_value=7).map(lambda s: 2 * s + 1)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def space_of(d):
    return HilbertSpace.from_dim(d)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_configure(config):
    config.acceptance_results = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "acceptance_results", [])
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(results):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {number:2d}: {title}")
        for line in detail:
            terminalreporter.write_line(f"        {line}")
