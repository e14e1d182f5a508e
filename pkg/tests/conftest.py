from __future__ import annotations

import pytest

from finvar import kernels


@pytest.fixture(params=kernels.available_backends())
def kernel_backend(request):
    """Run a test under every kernel backend, restoring the default."""
    previous = kernels.active_backend()
    kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(previous)
