"""Backend selection for the hot numeric kernels.

The kernels in :mod:`varmin.kernels` are written in nopython-compatible
style and can run either JIT-compiled by numba (default) or as plain
Python/NumPy. Set the environment variable ``VARMIN_NUMBA=0`` (or
``false``/``off``) before import to force the pure-Python fallback; the
fallback is also selected automatically when numba is not importable.
"""

import functools
import os

import numpy as np

_FALSY = {"0", "false", "off", "no"}


def numba_requested() -> bool:
    return os.environ.get("VARMIN_NUMBA", "1").strip().lower() not in _FALSY


def numba_available() -> bool:
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def make_jit(use_numba: bool):
    """Return the decorator applied to every kernel function.

    With numba this is ``njit``. Without it, functions are wrapped so
    uint64 wrap-around in the PRNG does not emit RuntimeWarnings.
    """
    if use_numba:
        from numba import njit

        return njit(cache=False)

    def plain(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            with np.errstate(over="ignore"):
                return fn(*args, **kwargs)

        return wrapper

    return plain


USE_NUMBA = numba_requested() and numba_available()
