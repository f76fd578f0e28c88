import pytest

from qcsim import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    _kernels.warmup()
