import numpy as np
import pytest

from qcsim import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # One-time JIT compilation; keeps timed tests free of compile latency.
    _kernels.warmup()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
