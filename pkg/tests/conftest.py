import pytest

from pickylab.constructions import psl2, psu3, suzuki
from pickylab.perm import Perm
from pickylab.permgroup import alternating, dihedral, symmetric


ACCEPTANCE: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running computation")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


def cyc(n, *cycles):
    return Perm.from_cycles(n, cycles)


@pytest.fixture(scope="session")
def S4():
    return symmetric(4)


@pytest.fixture(scope="session")
def A5():
    return alternating(5)


@pytest.fixture(scope="session")
def D8():
    return dihedral(8)


@pytest.fixture(scope="session")
def L27():
    return psl2(7)


@pytest.fixture(scope="session")
def Sz8():
    return suzuki(8)


@pytest.fixture(scope="session")
def U33():
    return psu3(3)
