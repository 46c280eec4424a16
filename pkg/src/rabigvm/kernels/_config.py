"""Backend selection for the tridiagonal eigen-kernels.

Set ``RABI_DISABLE_NUMBA=1`` to skip numba entirely and run the pure
numpy/Python fallback.
"""
import os

_FALSY = {"", "0", "false", "no", "off"}

NUMBA_REQUESTED = os.environ.get("RABI_DISABLE_NUMBA", "").strip().lower() in _FALSY

NUMBA_ENABLED = False
if NUMBA_REQUESTED:
    try:
        import numba

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a hard dependency in CI
        NUMBA_ENABLED = False


def jit(fn):
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn
