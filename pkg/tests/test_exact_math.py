from __future__ import annotations

import threading
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from moduli_euler.errors import PreconditionError
from moduli_euler.exact_math import (
    BernoulliTable,
    bernoulli_index_range,
    bernoulli_number,
    bernoulli_polynomial,
    power_sum_polynomial,
    weighted_bernoulli_sum,
)


def akiyama_tanigawa(n: int) -> list[Fraction]:
    """Independent oracle; yields B_1 = +1/2, flipped to -1/2 below."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return out


@pytest.mark.parametrize(
    "n, expected",
    [(0, Fraction(1)), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (12, Fraction(-691, 2730))],
)
def test_bernoulli_spot_values(n, expected):
    assert bernoulli_number(n) == expected


def test_bernoulli_matches_akiyama_tanigawa():
    oracle = akiyama_tanigawa(60)
    assert [bernoulli_number(n) for n in range(61)] == oracle


def test_odd_bernoulli_vanish():
    for n in range(1, 26):
        assert bernoulli_number(2 * n + 1) == 0


def test_bernoulli_rejects_negative():
    with pytest.raises(PreconditionError):
        bernoulli_number(-1)


def test_table_extension_is_idempotent():
    t = BernoulliTable()
    t.extend_to(20)
    first = [t[n] for n in range(21)]
    t.extend_to(10)
    t.extend_to(20)
    assert len(t) == 21
    assert [t[n] for n in range(21)] == first


def test_concurrent_extension_matches_serial():
    table = BernoulliTable()
    results: dict[int, list[Fraction]] = {}

    def work(i: int) -> None:
        results[i] = [table[n] for n in range(40 + i, -1, -1)]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    serial = akiyama_tanigawa(47)
    for i, vals in results.items():
        assert list(reversed(vals)) == serial[: 41 + i]


@pytest.mark.parametrize(
    "n, x, expected",
    [
        (1, Fraction(1, 3), Fraction(-1, 6)),
        (1, Fraction(1, 4), Fraction(-1, 4)),
        (3, Fraction(1, 3), Fraction(1, 27)),
        (3, Fraction(1, 4), Fraction(3, 64)),
    ],
)
def test_bernoulli_polynomial_spot_values(n, x, expected):
    assert bernoulli_polynomial(n, x) == expected


def test_bernoulli_polynomial_at_zero_is_number():
    for n in range(20):
        assert bernoulli_polynomial(n, 0) == bernoulli_number(n)


def test_bernoulli_polynomial_difference_equation():
    # B_n(x+1) - B_n(x) = n x^(n-1)
    for n in range(1, 12):
        for x in (Fraction(0), Fraction(2, 7), Fraction(-3, 5), Fraction(4)):
            assert bernoulli_polynomial(n, x + 1) - bernoulli_polynomial(n, x) == n * x ** (n - 1)


def test_reflection_symmetry():
    for n in range(16):
        for q in range(2, 9):
            for i in range(1, q):
                x = Fraction(i, q)
                assert bernoulli_polynomial(n, 1 - x) == (-1) ** n * bernoulli_polynomial(n, x)


def test_multiplication_theorem_at_zero():
    for n in range(13):
        for k in range(1, 9):
            lhs = sum(bernoulli_polynomial(n, Fraction(j, k)) for j in range(k))
            assert lhs == Fraction(k) ** (1 - n) * bernoulli_number(n)


@pytest.mark.parametrize("k, n, expected", [(1, 4, 10), (2, 3, 14), (3, 2, 9)])
def test_power_sum_examples(k, n, expected):
    assert power_sum_polynomial(k)(n) == expected


def test_power_sum_brute_force():
    for k in range(11):
        poly = power_sum_polynomial(k)
        assert poly.degree == k + 1
        assert poly.coefficients[0] == 0
        for n in range(1, 51):
            assert poly(n) == sum(j**k for j in range(1, n + 1))


def test_power_sum_scaled_argument():
    poly = power_sum_polynomial(3)
    scaled = poly.scaled_argument(Fraction(1, 3))
    assert sum(c * 9**r for r, c in enumerate(scaled)) == poly(3)


@given(st.integers(min_value=0, max_value=12), st.integers(min_value=1, max_value=200))
def test_power_sum_recurrence(k, n):
    poly = power_sum_polynomial(k)
    assert poly(n) - poly(n - 1) == n**k


@pytest.mark.parametrize(
    "g, q, expected",
    [(1, 3, Fraction(-1, 6)), (3, 3, Fraction(1, 27)), (5, 2, Fraction(0)), (7, 1, Fraction(0))],
)
def test_weighted_sum_examples(g, q, expected):
    assert weighted_bernoulli_sum(g, q) == expected


def test_weighted_sum_rejects_even_g():
    with pytest.raises(PreconditionError):
        weighted_bernoulli_sum(2, 5)


def test_index_range():
    assert list(bernoulli_index_range(7)) == [1, 2, 3]
    assert list(bernoulli_index_range(8)) == [1, 2, 3]
    assert list(bernoulli_index_range(2)) == []


def test_weighted_sum_genus_one_closed_form():
    for q in range(3, 13):
        assert weighted_bernoulli_sum(1, q) == -(Fraction(q * q, 12) - Fraction(q, 4) + Fraction(1, 6))


def test_weighted_sum_higher_genus_closed_form():
    from math import comb

    for g in range(3, 12, 2):
        for q in range(2, 9):
            conv = sum(
                comb(g + 1, r) * bernoulli_number(g + 1 - r) * bernoulli_number(r) * Fraction(q) ** r
                for r in range(1, g + 2)
            )
            expected = -Fraction(q) ** (1 - g) * (bernoulli_number(g + 1) + conv / (g + 1))
            assert weighted_bernoulli_sum(g, q) == expected
