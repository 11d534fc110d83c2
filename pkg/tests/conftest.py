import pytest

from frobsandwich.gf2k import field_make


@pytest.fixture
def F2():
    return field_make(1)


@pytest.fixture
def F4():
    return field_make(2)
