import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lie2herm import catalog
from lie2herm.lie2 import decompose_extended

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def entry_dec(entry):
    return decompose_extended(entry.algebra, *entry.hints)


@pytest.fixture
def ex8():
    return catalog.get("ex8-A412-typeI")


@pytest.fixture
def ex9():
    return catalog.get("ex9-h3R-typeI")


@pytest.fixture
def ex10():
    return catalog.get("ex10-A412-typeII")


@pytest.fixture
def ex12():
    return catalog.get("ex12-rr-typeII")


@pytest.fixture
def ex13():
    return catalog.get("ex13-A64-typeI")


@pytest.fixture
def mixed():
    return catalog.get("sec2-mixed")


def basis(n, i):
    """1-based standard basis vector."""
    v = np.zeros(n)
    v[i - 1] = 1.0
    return v


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
