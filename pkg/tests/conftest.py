import numpy as np
import pytest

from upbstrength import make_gen_pyramid7, make_pyramid, make_tiles

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def pyramid():
    return make_pyramid()


@pytest.fixture(scope="session")
def tiles():
    return make_tiles()


@pytest.fixture(scope="session")
def sept():
    return make_gen_pyramid7(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def criterion():
    """Record one acceptance line; the caller still asserts."""

    def record(number, ok, detail):
        _ACCEPTANCE.append((str(number), bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
