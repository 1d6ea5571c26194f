import pytest

from dvfields.dvmodel import base_model
from dvfields.hahn import monomial, one, zero
from dvfields.ordgroup import QQ1, ZZW


@pytest.fixture
def G():
    return ZZW


@pytest.fixture
def Q1():
    return QQ1


@pytest.fixture
def model():
    return base_model()


@pytest.fixture
def wild_model():
    m = base_model()
    m.adjoin_generator(lambda th: monomial(ZZW, ZZW.elem([0, -3])), note="test th1")
    return m


def e(group, *coords):
    return group.elem(list(coords))


@pytest.fixture
def mono():
    def make(group, coords, c=1):
        return monomial(group, group.elem(list(coords)), c)

    return make
