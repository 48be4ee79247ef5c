"""Numba switch for the hot kernels.

Set ``SEASKIT_DISABLE_NUMBA=1`` to force the pure-numpy paths (useful for
debugging and for machines without a working LLVM).
"""

import os

DISABLE_ENV = "SEASKIT_DISABLE_NUMBA"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get(DISABLE_ENV, "").strip().lower() not in (
    "1",
    "true",
    "yes",
    "on",
)


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True, nogil=True)(func)
