import sys

import pytest

from ualg import _pykernels
from ualg.algebra import FiniteAlgebra, make_algebra, product_algebra
from ualg.zoo import cyclic_group, meet_semilattice

try:
    from ualg import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def Z2():
    return cyclic_group(2)


@pytest.fixture
def Z3():
    return cyclic_group(3)


@pytest.fixture
def Z4():
    return cyclic_group(4)


@pytest.fixture
def M2():
    return meet_semilattice(2)


@pytest.fixture
def Z2xZ2(Z2):
    return product_algebra([Z2, Z2])


@pytest.fixture
def One(Z2):
    return FiniteAlgebra(Z2.signature, 1, ((0,),), "1")


@pytest.fixture
def Z2c():
    """Z2 with an extra constant 0."""
    return make_algebra(2, {"+": (2, [0, 1, 1, 0]), "c": (0, [0])}, "Z2c")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
