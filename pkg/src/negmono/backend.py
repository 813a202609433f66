"""Backend selection for the hot numeric kernels.

Two interchangeable kernel implementations exist:

* ``numba`` -- @njit-compiled loops (cyclic Jacobi eigensolver, batched
  triple evaluation, radial boundary solves),
* ``numpy`` -- pure-numpy fallback using vectorized/stacked operations.

The active backend is chosen by the ``NEGMONO_BACKEND`` environment
variable (``numba`` or ``numpy``).  When unset, numba is used if it can be
imported, otherwise the numpy path is selected silently.  Both paths share
the same function signatures and agree to ~1e-12; ``benchmarks/`` compares
their speed.
"""

from __future__ import annotations

import os

_ENV_VAR = "NEGMONO_BACKEND"

try:
    import numba  # noqa: F401

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def _resolve() -> str:
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice == "numba":
        if not HAS_NUMBA:
            raise ImportError(
                f"{_ENV_VAR}=numba requested but numba is not installed"
            )
        return "numba"
    if choice == "numpy":
        return "numpy"
    if choice:
        raise ValueError(f"{_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    return "numba" if HAS_NUMBA else "numpy"


_ACTIVE = _resolve()


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return _ACTIVE


def get_kernels():
    """Return the kernel module for the active backend."""
    if _ACTIVE == "numba":
        from negmono import _kernels_numba as k
    else:
        from negmono import _kernels_numpy as k
    return k
