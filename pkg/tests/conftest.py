import pytest

from weylcalc import build_root_datum


@pytest.fixture(scope="session")
def sl2():
    return build_root_datum("SL2")


@pytest.fixture(scope="session")
def pgl2():
    return build_root_datum("PGL2")


@pytest.fixture(scope="session")
def sl3():
    return build_root_datum("SL3")


@pytest.fixture(scope="session")
def pgl3():
    return build_root_datum("PGL3")


@pytest.fixture(scope="session")
def sp4():
    return build_root_datum("Sp4")


@pytest.fixture(scope="session")
def a2_twisted():
    return build_root_datum("A2-twisted")


@pytest.fixture(scope="session")
def a3_twisted():
    return build_root_datum("A3-twisted")
