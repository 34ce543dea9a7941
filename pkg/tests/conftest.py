import pytest

from qsemigroup.semigroup import HalfLine, Lattice, Numerical

ZP = Lattice(1)
N2 = Lattice(2)
N23 = Numerical((2, 3))
RP = HalfLine()

ALL = [ZP, N2, N23, RP]
DISCRETE = [ZP, N2, N23]


@pytest.fixture(params=ALL, ids=lambda sg: sg.name)
def sg(request):
    return request.param


@pytest.fixture(params=DISCRETE, ids=lambda sg: sg.name)
def dsg(request):
    return request.param
