import math

import pytest

from carlsonkit import ExpSum

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def sin_pi():
    return ExpSum.sin_pi()


@pytest.fixture
def telescoping():
    return ExpSum(((1 + 2j * math.pi, 1), (1, -1)))


@pytest.fixture
def constant_one():
    return ExpSum(((0, 1),))
