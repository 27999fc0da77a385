"""Numba switch.

Kernels are compiled with numba when it is importable and ``QTCHAIN_NUMBA``
is not set to a false value (``0``, ``false``, ``no``, ``off``). Otherwise the
pure-numpy implementations in :mod:`qtchain.kernels` are used.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and os.environ.get("QTCHAIN_NUMBA", "1").strip().lower() not in (
    "0",
    "false",
    "no",
    "off",
)


def njit(fn):
    """Compile ``fn`` with numba if available, else return it unchanged."""
    if not HAVE_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)
