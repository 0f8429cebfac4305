import numpy as np
import pytest

from ghsteiner.metric import make_space, simplex_space

ACCEPTANCE_LINES = []


@pytest.fixture
def space345():
    return make_space("abc", [[0, 3, 4], [3, 0, 5], [4, 5, 0]])


@pytest.fixture
def delta3():
    return simplex_space(3)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
