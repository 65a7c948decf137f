"""Kernel compilation switch.

Hot loops live in :mod:`repath._kernels` as plain Python over numpy arrays.
When numba is importable they are compiled with ``@njit``; setting
``REPATH_NO_NUMBA=1`` (or a missing numba) runs the same source interpreted.
"""
import os

_flag = os.environ.get("REPATH_NO_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    import numba

    NUMBA_AVAILABLE = True
except ImportError:
    numba = None
    NUMBA_AVAILABLE = False


def jit(fn):
    if NUMBA_AVAILABLE:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def backend():
    return "numba" if NUMBA_AVAILABLE else "python"
