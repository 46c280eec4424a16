"""Hot loops of the exact-diagonalization oracle.

Two interchangeable backends:

* ``"numba"``: the scalar loops in ``_loops`` compiled with ``numba.njit``.
* ``"numpy"``: vectorized multisection for the eigenvalue and the same
  loop source run by the interpreter for inverse iteration.

The default follows ``RABI_DISABLE_NUMBA`` (see ``_config``).
"""
import numpy as np

from . import _loops, _vectorized
from ._config import NUMBA_ENABLED

__all__ = ["BACKEND", "available_backends", "lowest_eigenvalue", "inverse_iteration", "sturm_count"]

BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def available_backends():
    return ("numba", "numpy") if NUMBA_ENABLED else ("numpy",)


def _py(fn):
    return getattr(fn, "py_func", fn)


def _resolve(backend):
    backend = BACKEND if backend is None else backend
    if backend not in available_backends():
        raise ValueError(f"backend {backend!r} unavailable (have {available_backends()})")
    return backend


def sturm_count(d, e, x, backend=None):
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    if _resolve(backend) == "numba":
        return int(_loops.sturm_count(d, e, float(x)))
    return int(_vectorized.sturm_counts(d, e, np.array([float(x)]))[0])


def lowest_eigenvalue(d, e, rtol=1e-14, backend=None):
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    if _resolve(backend) == "numba":
        return float(_loops.bisect_lowest(d, e, float(rtol)))
    return float(_vectorized.multisect_lowest(d, e, float(rtol)))


def inverse_iteration(d, e, theta, v0, max_iter=5, tol=1e-10, backend=None):
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    v0 = np.ascontiguousarray(v0, dtype=float)
    fn = _loops.inverse_iteration if _resolve(backend) == "numba" else _py(_loops.inverse_iteration)
    v, residual, iterations = fn(d, e, float(theta), v0, int(max_iter), float(tol))
    return v, float(residual), int(iterations)
