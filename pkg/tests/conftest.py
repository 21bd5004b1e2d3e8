import pytest

from coclass_quillen.family import CoclassFamily
from coclass_quillen.fixtures import FAMILIES, family_data

_families = {}


def get_family(name):
    if name not in _families:
        _families[name] = CoclassFamily(family_data(name))
    return _families[name]


@pytest.fixture(params=sorted(FAMILIES))
def family(request):
    return get_family(request.param)


@pytest.fixture
def dihedral():
    return get_family("dihedral2")


@pytest.fixture
def semidihedral():
    return get_family("semidihedral2")


@pytest.fixture
def quaternion():
    return get_family("quaternion2")
