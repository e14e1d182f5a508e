"""Backend dispatch for the GF(p) elimination kernels.

Two interchangeable backends implement the same kernel signatures:

* ``numba`` -- @njit-compiled loops (default when numba imports cleanly)
* ``numpy`` -- pure-numpy fallback with vectorized column operations

The environment variable ``FINVAR_KERNELS`` selects the backend at
import time.  The choice never affects results, only speed; tests and
``benchmarks/bench_kernels.py`` exercise both.
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_BACKENDS = {"numpy": _kernels_numpy}

try:
    from . import _kernels_numba

    _BACKENDS["numba"] = _kernels_numba
    _DEFAULT = "numba"
except ImportError:  # pragma: no cover - numba is a declared dependency
    _DEFAULT = "numpy"

_active = _BACKENDS[os.environ.get("FINVAR_KERNELS", _DEFAULT).strip().lower() or _DEFAULT]


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def active_backend() -> str:
    return _active.NAME


def set_backend(name: str) -> None:
    """Switch kernel backend (used by tests and benchmarks)."""
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown kernel backend {name!r}; have {available_backends()}")


def rref_in_place(a, pivots, p):
    return _active.rref_in_place(a, pivots, p)


def reduce_row(basis, pivots, nrows, vec, p):
    return _active.reduce_row(basis, pivots, nrows, vec, p)


def insert_row(basis, pivots, nrows, vec, p):
    return _active.insert_row(basis, pivots, nrows, vec, p)
