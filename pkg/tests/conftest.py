import functools

import pytest

from cubicmoves.enumeration import enumerate_classes
from cubicmoves.gamma import build

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


@functools.lru_cache(maxsize=None)
def catalog(n):
    return enumerate_classes(n)


@functools.lru_cache(maxsize=None)
def gamma(n, mode="orbit"):
    return build(n, mode, catalog=catalog(n))


@pytest.fixture(scope="session")
def catalogs():
    return {n: catalog(n) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def gammas():
    return {n: gamma(n) for n in (1, 2, 3)}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
