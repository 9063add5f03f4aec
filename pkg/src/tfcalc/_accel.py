"""Numba toggle for the hot loops.

Set ``TFCALC_DISABLE_NUMBA=1`` in the environment before importing
:mod:`tfcalc` to force the pure-numpy kernels.  The flag is read once at
import time.
"""

import os

_FALSY = {"", "0", "false", "no", "off"}


def _numba_requested():
    return os.environ.get("TFCALC_DISABLE_NUMBA", "0").strip().lower() in _FALSY


try:
    import numba as _numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and _numba_requested()


def njit(fn):
    """Compile ``fn`` with numba when available, else return it unchanged."""
    if not HAVE_NUMBA:
        return fn
    return _numba.njit(cache=True)(fn)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
