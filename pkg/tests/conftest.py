import pytest

from gausslab.field import cached_field


@pytest.fixture(scope="session")
def f4():
    return cached_field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return cached_field(5, 1)


@pytest.fixture(scope="session")
def f7():
    return cached_field(7, 1)


@pytest.fixture(scope="session")
def f9():
    return cached_field(3, 2)


@pytest.fixture(scope="session")
def f16():
    return cached_field(2, 4)


@pytest.fixture(scope="session")
def f27():
    return cached_field(3, 3)


@pytest.fixture(scope="session")
def f64():
    return cached_field(2, 6)


@pytest.fixture(scope="session")
def f121():
    return cached_field(11, 2)
