from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from moduli_euler.errors import PreconditionError, TruncationError
from moduli_euler.exact_math import bernoulli_number
from moduli_euler.series import (
    BivariateSeries,
    UnivariateSeries,
    extract_coefficient,
    log_one_minus,
    log_one_minus_univariate,
    penner_prefactor_series,
)


def test_cancellation_removes_terms():
    t = BivariateSeries(3, {(1, 0): 1})
    assert len(t + (-t)) == 0
    assert t - t == BivariateSeries(3)


def test_product_truncates():
    nt = BivariateSeries(1, {(1, 1): 1})
    t = BivariateSeries(1, {(1, 0): 1})
    assert len(nt * t) == 0


def test_polynomial_product():
    a = BivariateSeries(3, {(1, 0): 1, (2, 0): 1})
    b = BivariateSeries(3, {(1, 0): 1})
    assert a * b == BivariateSeries(3, {(2, 0): 1, (3, 0): 1})


def test_mismatched_orders():
    with pytest.raises(PreconditionError):
        BivariateSeries(2) + BivariateSeries(3)
    with pytest.raises(PreconditionError):
        UnivariateSeries(2) * UnivariateSeries(3)


def test_invariants_enforced():
    with pytest.raises(PreconditionError):
        BivariateSeries(2, {(0, 1): 1})
    with pytest.raises(PreconditionError):
        BivariateSeries(2, {(3, 1): 1})
    assert BivariateSeries(2, {(1, 1): 0}).terms == {}


def test_log_one_minus_examples():
    assert log_one_minus(1, 1, 2) == BivariateSeries(2, {(1, 0): -1, (2, 0): Fraction(-1, 2)})
    assert log_one_minus(2, (0, 1), 1) == BivariateSeries(1, {(1, 1): -2})
    assert log_one_minus(3, 1, 3) == BivariateSeries(
        3, {(1, 0): -3, (2, 0): Fraction(-9, 2), (3, 0): -9}
    )
    with pytest.raises(PreconditionError):
        log_one_minus(0, 1, 3)


def test_log_one_minus_exponentiates_back():
    # exp(log(1 - p t)) == 1 - p t: check via the derivative identity
    # (1 - p t) * d/dt log(1 - p t) = -p
    for p in (1, 2, 5):
        s = log_one_minus_univariate(p, 1, 8)
        deriv = [m * s.coefficient(m) for m in range(1, 9)]  # coefficient of t^(m-1)
        prod = [deriv[0]] + [deriv[i] - p * deriv[i - 1] for i in range(1, 8)]
        assert prod == [-p] + [0] * 7


def test_specialization_matches_univariate():
    order = 7
    for n in (1, 4, 9):
        biv = BivariateSeries(order)
        uni = UnivariateSeries(order)
        for a in range(1, 6):
            biv = biv + log_one_minus(a, (-a, 1), order) + log_one_minus(a + 1, (Fraction(1, 3), 0, 2), order)
            uni = uni + log_one_minus_univariate(a, n - a, order)
            uni = uni + log_one_minus_univariate(a + 1, Fraction(1, 3) + 2 * n * n, order)
        assert biv.specialize(n) == uni


def test_penner_prefactor_examples():
    assert penner_prefactor_series(1) == BivariateSeries(1, {(1, 1): Fraction(-1, 12)})
    assert penner_prefactor_series(3) == BivariateSeries(
        3, {(1, 1): Fraction(-1, 12), (3, 1): Fraction(1, 360)}
    )
    s = penner_prefactor_series(15)
    assert all(m % 2 == 1 and n == 1 for (m, n) in s.terms)


def test_penner_prefactor_alternates():
    s = penner_prefactor_series(15)
    signs = [s.coefficient(m, 1) > 0 for m in range(1, 16, 2)]
    assert signs == [i % 2 == 1 for i in range(8)]


def test_penner_prefactor_against_loggamma():
    # log(sqrt(2 pi t) / (Gamma(1/t) (e t)^(1/t))) at small t; no constant survives
    mpmath.mp.dps = 60
    order = 25
    s = penner_prefactor_series(order)
    for t in (mpmath.mpf(1) / 40, mpmath.mpf(1) / 60):
        exact = (
            mpmath.log(mpmath.sqrt(2 * mpmath.pi * t))
            - mpmath.loggamma(1 / t)
            - (1 / t) * mpmath.log(mpmath.e * t)
        )
        approx = sum(mpmath.mpf(c.numerator) / c.denominator * t**m for (m, _), c in s.terms.items())
        # Stirling remainder is bounded by the first omitted term
        b = bernoulli_number(order + 3)
        bound = abs(mpmath.mpf(b.numerator) / b.denominator) / ((order + 3) * (order + 2)) * t ** (order + 2)
        assert abs(exact - approx) <= bound


def test_extract_coefficient():
    s = penner_prefactor_series(3)
    assert extract_coefficient(s, 1, 1) == Fraction(-1, 12)
    assert extract_coefficient(s, 2, 2) == 0
    with pytest.raises(TruncationError):
        extract_coefficient(s, 1, 4)


small_series = st.builds(
    lambda terms: BivariateSeries(4, terms),
    st.dictionaries(
        st.tuples(st.integers(1, 4), st.integers(0, 3)),
        st.fractions(min_value=-5, max_value=5, max_denominator=7),
        max_size=6,
    ),
)


@settings(max_examples=60)
@given(small_series, small_series, small_series)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40)
@given(small_series, st.integers(-4, 4))
def test_specialize_is_a_ring_map(a, n):
    b = log_one_minus(2, (1, 1), 4)
    assert (a * b).specialize(n) == a.specialize(n) * b.specialize(n)
    assert (a + b).specialize(n) == a.specialize(n) + b.specialize(n)
