"""Backend switch for the hot kernels.

Set ``SIMPCX_NUMBA=0`` to force the pure-numpy path. Numba is also skipped
when it cannot be imported. The choice is made once, at import time; both
paths stay importable so they can be benchmarked against each other.
"""
import os

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f

_flag = os.environ.get("SIMPCX_NUMBA", "1").strip().lower()
USE_NUMBA = HAVE_NUMBA and _flag not in ("0", "false", "no", "off")


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
