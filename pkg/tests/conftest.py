import pytest

from clonoid_lab.modules import module_make, regular_module
from clonoid_lab.rings import ring_make, zmod

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def Z():
    cache = {}

    def make(m):
        if m not in cache:
            cache[m] = regular_module(zmod(m))
        return cache[m]

    return make


@pytest.fixture(scope="session")
def klein():
    return module_make({"kind": "abelian", "invariants": [2, 2]})


@pytest.fixture(scope="session")
def tri2():
    return ring_make({"kind": "triangular", "p": 2})
