"""Scalar-loop kernels for symmetric tridiagonal matrices.

Each kernel is self-contained (no calls to other kernels) so that the
uncompiled ``py_func`` is a valid pure-Python path as well.
Matrices are given by the diagonal ``d`` (length n) and off-diagonal ``e``
(length n - 1).
"""
import numpy as np

from ._config import jit

_EPS = 2.220446049250313e-16
_TINY = 2.2250738585072014e-308


@jit
def sturm_count(d, e, x):
    """Number of eigenvalues strictly below ``x`` (LDL^T inertia)."""
    n = d.shape[0]
    pivmin = _TINY
    for i in range(n - 1):
        pivmin = max(pivmin, e[i] * e[i] * _TINY)
    count = 0
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    if q < 0.0:
        count += 1
    for i in range(1, n):
        q = d[i] - x - e[i - 1] * e[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


@jit
def bisect_lowest(d, e, rtol):
    """Smallest eigenvalue by Sturm-sequence bisection.

    Stops once the bracket width is below ``rtol * |bracket|`` or a few ulps
    of the matrix norm, whichever is larger.
    """
    n = d.shape[0]
    lo = d[0]
    hi = d[0]
    norm = 0.0
    for i in range(n):
        r = 0.0
        if i > 0:
            r += abs(e[i - 1])
        if i < n - 1:
            r += abs(e[i])
        lo = min(lo, d[i] - r)
        hi = min(hi, d[i])
        norm = max(norm, abs(d[i]) + r)
    floor = 4.0 * _EPS * max(norm, _TINY)
    lo -= floor
    hi += floor
    pivmin = _TINY
    for i in range(n - 1):
        pivmin = max(pivmin, e[i] * e[i] * _TINY)
    for _ in range(400):
        width = hi - lo
        if width <= max(rtol * max(abs(lo), abs(hi)), floor):
            break
        mid = lo + 0.5 * width
        # Sturm count at mid, stopping at the first negative pivot.
        below = False
        q = d[0] - mid
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            below = True
        else:
            for i in range(1, n):
                q = d[i] - mid - e[i - 1] * e[i - 1] / q
                if abs(q) < pivmin:
                    q = -pivmin
                if q < 0.0:
                    below = True
                    break
        if below:
            hi = mid
        else:
            lo = mid
    return lo + 0.5 * (hi - lo)


@jit
def inverse_iteration(d, e, theta, v0, max_iter, tol):
    """Eigenvector for the eigenvalue closest to ``theta``.

    Factorizes ``A - theta I`` once with partial pivoting (LAPACK gttrf
    layout) and iterates solves. Returns ``(v, residual, iterations)`` where
    the residual is ``||(A - theta I) v||_2`` for the unit vector ``v``.
    """
    n = d.shape[0]
    dd = d - theta
    dl = e.copy()
    du = e.copy()
    du2 = np.zeros(max(n - 2, 0))
    swap = np.zeros(max(n - 1, 0), dtype=np.bool_)
    norm = 0.0
    for i in range(n):
        r = abs(dd[i])
        if i > 0:
            r += abs(e[i - 1])
        if i < n - 1:
            r += abs(e[i])
        norm = max(norm, r)
    for i in range(n - 1):
        if abs(dd[i]) >= abs(dl[i]):
            if dd[i] != 0.0:
                fact = dl[i] / dd[i]
                dl[i] = fact
                dd[i + 1] -= fact * du[i]
            else:
                dl[i] = 0.0
        else:
            fact = dd[i] / dl[i]
            dd[i] = dl[i]
            dl[i] = fact
            tmp = du[i]
            du[i] = dd[i + 1]
            dd[i + 1] = tmp - fact * dd[i + 1]
            if i < n - 2:
                du2[i] = du[i + 1]
                du[i + 1] = -fact * du[i + 1]
            swap[i] = True
    # Exactly singular pivots are expected when theta is an eigenvalue.
    pert = _EPS * max(norm, _TINY)
    for i in range(n):
        if abs(dd[i]) < pert:
            dd[i] = pert if dd[i] >= 0.0 else -pert

    v = v0 / np.sqrt(np.sum(v0 * v0))
    residual = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        b = v.copy()
        for i in range(n - 1):
            if not swap[i]:
                b[i + 1] -= dl[i] * b[i]
            else:
                tmp = b[i]
                b[i] = b[i + 1]
                b[i + 1] = tmp - dl[i] * b[i]
        b[n - 1] /= dd[n - 1]
        if n > 1:
            b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2]
        for i in range(n - 3, -1, -1):
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / dd[i]
        scale = np.max(np.abs(b))
        b /= scale
        v = b / np.sqrt(np.sum(b * b))
        acc = 0.0
        for i in range(n):
            r = (d[i] - theta) * v[i]
            if i > 0:
                r += e[i - 1] * v[i - 1]
            if i < n - 1:
                r += e[i] * v[i + 1]
            acc += r * r
        residual = np.sqrt(acc)
        if residual <= tol:
            break
    return v, residual, it
