"""Exact rational arithmetic, Bernoulli numbers and Faulhaber polynomials.

All values are :class:`fractions.Fraction`, which already keeps numerator and
denominator reduced with a positive denominator and stores zero as ``0/1``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import PreconditionError

__all__ = [
    "ExactRational",
    "BernoulliTable",
    "PowerSumPolynomial",
    "bernoulli_number",
    "bernoulli_polynomial",
    "power_sum_polynomial",
    "bernoulli_index_range",
    "weighted_bernoulli_sum",
]

ExactRational = Fraction


class BernoulliTable:
    """Lazily extended table of B_0, B_1, ... with B_1 = -1/2.

    Extension runs the recurrence ``sum_{k=0}^{n} C(n+1, k) B_k = 0`` and is
    guarded by a lock, so concurrent readers see the same values a serial
    run would produce.
    """

    def __init__(self) -> None:
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def extend_to(self, n: int) -> None:
        if n < len(self._values):
            return
        with self._lock:
            values = self._values
            for m in range(len(values), n + 1):
                if m > 1 and m % 2 == 1:
                    values.append(Fraction(0))
                    continue
                acc = sum((comb(m + 1, k) * values[k] for k in range(m)), Fraction(0))
                values.append(-acc / (m + 1))

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise PreconditionError(f"Bernoulli index must be >= 0, got {n}")
        self.extend_to(n)
        return self._values[n]


_TABLE = BernoulliTable()


def bernoulli_number(n: int) -> Fraction:
    """Return B_n (convention B_1 = -1/2)."""
    return _TABLE[n]


def bernoulli_polynomial(n: int, x: Fraction | int) -> Fraction:
    """Evaluate B_n(x) = sum_k C(n, k) B_k x^(n-k) exactly."""
    if n < 0:
        raise PreconditionError(f"degree must be >= 0, got {n}")
    x = Fraction(x)
    return sum(
        (comb(n, k) * bernoulli_number(k) * x ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


@dataclass(frozen=True)
class PowerSumPolynomial:
    """Closed form of sum_{j=1}^{n} j^k as a polynomial in n.

    ``coefficients[r]`` multiplies n^r; index 0 is always zero.
    """

    k: int
    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, n: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    def scaled_argument(self, factor: Fraction | int) -> tuple[Fraction, ...]:
        """Coefficients of the polynomial n -> P(factor * n)."""
        factor = Fraction(factor)
        return tuple(c * factor**r for r, c in enumerate(self.coefficients))


_POWER_SUMS: dict[int, PowerSumPolynomial] = {}


def power_sum_polynomial(k: int) -> PowerSumPolynomial:
    if k < 0:
        raise PreconditionError(f"exponent must be >= 0, got {k}")
    cached = _POWER_SUMS.get(k)
    if cached is not None:
        return cached
    coeffs = [Fraction(0)] * (k + 2)
    for r in range(1, k + 2):
        sign = -1 if (k + 1 - r) % 2 else 1
        coeffs[r] = Fraction(comb(k + 1, r) * sign, k + 1) * bernoulli_number(k + 1 - r)
    poly = PowerSumPolynomial(k, tuple(coeffs))
    # dict assignment is atomic; a racing duplicate computes the same value
    _POWER_SUMS[k] = poly
    return poly


def bernoulli_index_range(q: int) -> Sequence[int]:
    """Indices i = 1..I(q) with I(q) = (q-1)//2 for odd q and (q-2)//2 for even q."""
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    top = (q - 1) // 2 if q % 2 else (q - 2) // 2
    return range(1, top + 1)


def weighted_bernoulli_sum(g: int, q: int) -> Fraction:
    """sum_{i=1}^{I(q)} (q - 2i) B_g(i/q) for odd g; zero when the range is empty."""
    if g < 1 or g % 2 == 0:
        raise PreconditionError(f"weighted Bernoulli sum needs odd g >= 1, got {g}")
    return sum(
        ((q - 2 * i) * bernoulli_polynomial(g, Fraction(i, q)) for i in bernoulli_index_range(q)),
        Fraction(0),
    )
