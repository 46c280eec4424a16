"""Numpy multisection for the lowest eigenvalue.

Evaluates Sturm counts at a block of probe points per sweep, so the Python
loop runs over matrix rows only and the bracket shrinks by ``probes + 1``
per pass.
"""
import numpy as np

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny


def sturm_counts(d, e, xs):
    """Eigenvalue counts below each entry of ``xs``."""
    xs = np.asarray(xs, dtype=float)
    e2 = np.asarray(e, dtype=float) ** 2
    pivmin = max(_TINY, float(e2.max(initial=0.0)) * _TINY)
    q = d[0] - xs
    q[np.abs(q) < pivmin] = -pivmin
    count = (q < 0).astype(np.int64)
    for i in range(1, len(d)):
        q = d[i] - xs - e2[i - 1] / q
        q[np.abs(q) < pivmin] = -pivmin
        count += q < 0
    return count


def multisect_lowest(d, e, rtol, probes=31):
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    radius = np.zeros_like(d)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    norm = float(np.max(np.abs(d) + radius))
    floor = 4.0 * _EPS * max(norm, _TINY)
    lo = float(np.min(d - radius)) - floor
    hi = float(np.min(d)) + floor
    for _ in range(200):
        width = hi - lo
        if width <= max(rtol * max(abs(lo), abs(hi)), floor):
            break
        xs = lo + width * np.arange(1, probes + 1) / (probes + 1)
        counts = sturm_counts(d, e, xs)
        hit = np.flatnonzero(counts >= 1)
        if hit.size:
            k = hit[0]
            hi = xs[k]
            if k > 0:
                lo = xs[k - 1]
        else:
            lo = xs[-1]
    return lo + 0.5 * (hi - lo)
