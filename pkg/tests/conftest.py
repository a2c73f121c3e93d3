import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lcrigidity._kernels import njit  # noqa: E402

BACKENDS = ["numpy"] + (["numba"] if njit is not None else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param
