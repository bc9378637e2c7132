import pytest

from kring.branchrules import restriction_matrix


@pytest.fixture(scope="session")
def sl4():
    return restriction_matrix("sl-sp", 2)


@pytest.fixture(scope="session")
def sl6():
    return restriction_matrix("sl-sp", 3)


@pytest.fixture(scope="session")
def sl8():
    return restriction_matrix("sl-sp", 4)


@pytest.fixture(scope="session")
def e6f4():
    return restriction_matrix("e6-f4")
