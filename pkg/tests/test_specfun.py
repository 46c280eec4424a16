import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rabigvm.errors import DomainError
from rabigvm.specfun import displacement_factor, laguerre_assoc, scaled_power_term, series_terms


def laguerre_closed(n, k, x):
    """Explicit sum L_n^k(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!, in exact rationals."""
    x = Fraction(x)
    total = sum(Fraction((-1) ** i * math.comb(n + k, n - i), math.factorial(i)) * x**i for i in range(n + 1))
    return float(total)


def test_laguerre_examples():
    assert laguerre_assoc(0, 5, 7.3) == 1.0
    assert laguerre_assoc(1, 0, 0.04) == pytest.approx(0.96, abs=1e-15)
    # x^2/2 - 2x + 1 at x = 0.04
    assert laguerre_assoc(2, 0, 0.04) == pytest.approx(0.9208, abs=1e-15)


@pytest.mark.parametrize("n", range(7))
@pytest.mark.parametrize("k", range(4))
@pytest.mark.parametrize("x", [0.0, 0.1, 1.0, 4.0])
def test_laguerre_matches_closed_form(n, k, x):
    ref = laguerre_closed(n, k, Fraction(x).limit_denominator(10**6))
    got = laguerre_assoc(n, k, x)
    assert got == pytest.approx(ref, rel=1e-12, abs=1e-13)


@given(st.integers(0, 20), st.integers(0, 10))
def test_laguerre_at_zero_is_binomial(n, k):
    assert laguerre_assoc(n, k, 0.0) == pytest.approx(math.comb(n + k, n), rel=1e-12)


@given(st.integers(0, 30), st.integers(0, 6), st.floats(0.0, 4.0))
def test_laguerre_matches_mpmath(n, k, x):
    ref = float(mpmath.laguerre(n, k, x))
    assert laguerre_assoc(n, k, x) == pytest.approx(ref, rel=1e-9, abs=1e-10)


def test_laguerre_rejects_negative():
    with pytest.raises(DomainError):
        laguerre_assoc(-1, 0, 0.1)
    with pytest.raises(DomainError):
        laguerre_assoc(2, -1, 0.1)


def test_scaled_power_examples():
    assert scaled_power_term(0, 123.0) == 1.0
    assert scaled_power_term(1, -0.2) == pytest.approx(0.04, rel=1e-15)
    # 0.04^3 / 3! evaluated at 40 digits
    assert scaled_power_term(3, -0.2) == pytest.approx(1.0666666666666667e-05, rel=1e-14)


@given(st.floats(-1.99, 1.99).filter(lambda v: abs(v) > 1e-3), st.integers(0, 80))
def test_scaled_power_matches_bigfloat(two_lambda, n):
    ref = mpmath.mpf(two_lambda) ** (2 * n) / mpmath.factorial(n)
    assert scaled_power_term(n, two_lambda) == pytest.approx(float(ref), rel=1e-12)


@given(st.floats(-0.999, 0.999).filter(lambda v: v != 0.0))
def test_scaled_power_positive_and_decreasing(two_lambda):
    terms = [t.value for t in series_terms(two_lambda, 60)]
    assert all(t > 0 or t == 0.0 for t in terms)
    assert terms[0] > 0
    assert all(b <= a for a, b in zip(terms[1:], terms[2:]))


def test_series_terms_agree_with_scaled_power():
    for term in series_terms(-0.7, 25, start=2):
        assert term.value == pytest.approx(scaled_power_term(term.index_n, -0.7), rel=1e-13)


def test_scaled_power_underflows_gracefully():
    assert 0.0 <= scaled_power_term(400, 1.9) < 1e-200


@given(st.integers(0, 30), st.integers(0, 30), st.floats(-1.9, 1.9))
def test_displacement_factor(n, m, two_lambda):
    if n < m:
        n, m = m, n
    ref = mpmath.mpf(two_lambda) ** (n - m) * mpmath.sqrt(mpmath.factorial(m) / mpmath.factorial(n))
    assert displacement_factor(n, m, two_lambda) == pytest.approx(float(ref), rel=1e-12, abs=1e-300)
