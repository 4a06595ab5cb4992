import pytest

from lamecurve import default_context


@pytest.fixture(scope="session")
def ctx1():
    return default_context(1)


@pytest.fixture(scope="session")
def ctx2():
    return default_context(2)
