import pytest

from crushcount import _fallback
from crushcount.grid import candy_grid

try:
    from crushcount import _kernels
except ImportError:  # extension not built
    _kernels = None

KERNEL_MODULES = [pytest.param(_fallback, id="python")]
if _kernels is not None:
    KERNEL_MODULES.append(pytest.param(_kernels, id="cython"))


@pytest.fixture(params=KERNEL_MODULES)
def kernel_module(request):
    return request.param


@pytest.fixture
def grid9():
    return candy_grid(9, 9, 3)


@pytest.fixture
def grid3():
    return candy_grid(3, 3, 3)


@pytest.fixture
def row3():
    return candy_grid(1, 3, 3)
