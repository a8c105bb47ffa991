import pytest

from monocat.algebra import build_nilpotent_loop
from monocat.subcategory import Subcat


@pytest.fixture(scope="session")
def L1():
    return build_nilpotent_loop(1, 2)


@pytest.fixture(scope="session")
def L2():
    return build_nilpotent_loop(2, 2)


@pytest.fixture(scope="session")
def L3():
    return build_nilpotent_loop(3, 2)


@pytest.fixture(scope="session")
def modL1(L1):
    return Subcat.all_modules(L1, 1)


@pytest.fixture(scope="session")
def modL2(L2):
    return Subcat.all_modules(L2, 2)


@pytest.fixture(scope="session")
def modL3(L3):
    return Subcat.all_modules(L3, 3)


@pytest.fixture(scope="session")
def setting2(modL2):
    from monocat.functor_cat import StableAuslanderSetting

    return StableAuslanderSetting(modL2)


@pytest.fixture(scope="session")
def setting3(modL3):
    from monocat.functor_cat import StableAuslanderSetting

    return StableAuslanderSetting(modL3)
