import numpy as np
import pytest

from rabigvm import ModelParams


@pytest.fixture
def resonant():
    return ModelParams(1.0, 1.0, 0.2)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def jacobi_eigenvalues(a, sweeps=60, tol=1e-15):
    """Cyclic Jacobi rotations on a small dense symmetric matrix."""
    a = np.array(a, dtype=float)
    n = len(a)
    for _ in range(sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0)) if theta != 0 else 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))
