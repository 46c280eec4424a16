"""Associated Laguerre polynomials and factorial-scaled power series terms."""
from __future__ import annotations

import math
from typing import Iterator, NamedTuple

from .errors import DomainError

__all__ = ["laguerre_assoc", "scaled_power_term", "SeriesTerm", "series_terms", "displacement_factor"]


def laguerre_assoc(n: int, k: int, x: float) -> float:
    """Associated Laguerre polynomial L_n^k(x) by forward three-term recurrence.

    Forward-stable for the small arguments (x <~ 4) that occur in the
    displacement matrix elements.
    """
    if n < 0 or k < 0:
        raise DomainError(f"laguerre_assoc needs n, k >= 0 (got n={n}, k={k})")
    prev = 1.0
    if n == 0:
        return prev
    cur = 1.0 + k - x
    for m in range(2, n + 1):
        prev, cur = cur, ((2 * m - 1 + k - x) * cur - (m - 1 + k) * prev) / m
    return cur


def scaled_power_term(n: int, two_lambda: float) -> float:
    """``two_lambda**(2n) / n!`` via t_{m+1} = t_m * two_lambda**2 / (m + 1)."""
    if n < 0:
        raise DomainError(f"scaled_power_term needs n >= 0 (got {n})")
    sq = two_lambda * two_lambda
    t = 1.0
    for m in range(n):
        t *= sq / (m + 1)
    return t


class SeriesTerm(NamedTuple):
    index_n: int
    value: float


def series_terms(two_lambda: float, n_max: int, start: int = 0) -> Iterator[SeriesTerm]:
    """Yield ``(N, two_lambda**(2N)/N!)`` for N = start..n_max with one multiply per step."""
    sq = two_lambda * two_lambda
    t = 1.0
    for m in range(n_max + 1):
        if m >= start:
            yield SeriesTerm(m, t)
        t *= sq / (m + 1)


def displacement_factor(n: int, m: int, two_lambda: float) -> float:
    """``two_lambda**(n-m) * sqrt(m!/n!)`` for n >= m, without forming factorials."""
    if n < m:
        raise DomainError(f"displacement_factor needs n >= m (got n={n}, m={m})")
    f = 1.0
    for j in range(m + 1, n + 1):
        f *= two_lambda / math.sqrt(j)
    return f
