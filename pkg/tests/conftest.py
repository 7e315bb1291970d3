from __future__ import annotations

import pytest
from hypothesis import settings

from filicoh.algebra import NLieAlgebra, abelian_algebra, direct_sum, simple_algebra

settings.register_profile("filicoh", deadline=None, max_examples=40)
settings.load_profile("filicoh")


@pytest.fixture(scope="session")
def a4():
    return simple_algebra(3, (1, 1, 1, 1))


@pytest.fixture(scope="session")
def a4_lorentz():
    return simple_algebra(3, (1, 1, 1, -1))


@pytest.fixture(scope="session")
def a5():
    return simple_algebra(4, (1, 1, 1, 1, 1))


@pytest.fixture(scope="session")
def a4a4(a4):
    return direct_sum([a4, a4])


@pytest.fixture(scope="session")
def solvable3():
    # [e1, e2, e3] = e1
    return NLieAlgebra(3, 3, {(0, 1, 2): {0: 1}})


@pytest.fixture(scope="session")
def abelian4():
    return abelian_algebra(3, 4)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
