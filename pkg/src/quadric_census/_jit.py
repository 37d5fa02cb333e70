"""Backend selection for the hot kernels.

Every kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
version. ``QUADRIC_CENSUS_NO_JIT=1`` (or a missing numba) selects numpy.
"""

import os
import warnings

_FLAG = os.environ.get("QUADRIC_CENSUS_NO_JIT", "").strip().lower()

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")

if not HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on"):
    warnings.warn("numba unavailable; falling back to numpy kernels", RuntimeWarning)


def backend_name():
    return "numba" if USE_NUMBA else "numpy"


def set_threads(threads):
    """Apply a thread count to numba's pool (no-op on the numpy path)."""
    if HAVE_NUMBA and threads:
        numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))


def resolve_threads(threads=None):
    if threads is None:
        env = os.environ.get("QUADRIC_CENSUS_THREADS")
        threads = int(env) if env else 1
    threads = int(threads)
    if threads < 1:
        raise ValueError("thread count must be >= 1")
    return threads
