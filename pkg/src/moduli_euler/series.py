"""Truncated power series in t with coefficients polynomial in N.

Only strictly positive powers of t are stored; coefficient extraction never
reads the t^0 term.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence, Union

from . import polynomial as P
from .errors import PreconditionError, TruncationError
from .exact_math import bernoulli_number

__all__ = [
    "DEFAULT_ORDER",
    "BivariateSeries",
    "UnivariateSeries",
    "log_one_minus",
    "log_one_minus_univariate",
    "penner_prefactor_series",
    "extract_coefficient",
]

DEFAULT_ORDER = 12

Scalar = Union[int, Fraction]
Weight = Union[int, Fraction, Sequence[Scalar]]


def _check_order(order: int) -> None:
    if not isinstance(order, int) or order < 1:
        raise PreconditionError(f"truncation order must be a positive integer, got {order!r}")


class BivariateSeries:
    """Immutable sparse map ``(t_degree, N_degree) -> coefficient``."""

    __slots__ = ("_order", "_terms")

    def __init__(self, order: int, terms: Mapping[tuple[int, int], Scalar] | None = None):
        _check_order(order)
        clean: dict[tuple[int, int], Fraction] = {}
        for (m, s), c in (terms or {}).items():
            if not 1 <= m <= order:
                raise PreconditionError(f"t degree {m} outside 1..{order}")
            if s < 0:
                raise PreconditionError(f"negative N degree {s}")
            c = Fraction(c)
            if c:
                clean[(m, s)] = c
        self._order = order
        self._terms = MappingProxyType(clean)

    @classmethod
    def from_polynomials(cls, order: int, by_degree: Mapping[int, Sequence[Scalar]]) -> BivariateSeries:
        """Build from ``{t_degree: coefficients of a polynomial in N}``; degrees above ``order`` are dropped."""
        terms = {}
        for m, poly in by_degree.items():
            if m > order:
                continue
            for s, c in enumerate(poly):
                if c:
                    terms[(m, s)] = c
        return cls(order, terms)

    @property
    def order(self) -> int:
        return self._order

    @property
    def terms(self) -> Mapping[tuple[int, int], Fraction]:
        return self._terms

    def coefficient(self, m: int, s: int) -> Fraction:
        return self._terms.get((m, s), Fraction(0))

    def n_polynomial(self, m: int) -> P.Poly:
        """Coefficient of t^m as a polynomial in N."""
        degs = [s for (mm, s) in self._terms if mm == m]
        if not degs:
            return ()
        return P.normalize(self.coefficient(m, s) for s in range(max(degs) + 1))

    def specialize(self, n: Scalar) -> UnivariateSeries:
        """Substitute a concrete value for N."""
        coeffs: dict[int, Fraction] = {}
        for (m, s), c in self._terms.items():
            coeffs[m] = coeffs.get(m, Fraction(0)) + c * Fraction(n) ** s
        return UnivariateSeries(self._order, coeffs)

    def _same_order(self, other: BivariateSeries) -> None:
        if other._order != self._order:
            raise PreconditionError(
                f"truncation orders differ: {self._order} vs {other._order}"
            )

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        self._same_order(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return BivariateSeries(self._order, out)

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(self._order, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: BivariateSeries | Scalar) -> BivariateSeries:
        if isinstance(other, (int, Fraction)):
            return BivariateSeries(self._order, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        self._same_order(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (m1, s1), c1 in self._terms.items():
            for (m2, s2), c2 in other._terms.items():
                if m1 + m2 > self._order:
                    continue
                key = (m1 + m2, s1 + s2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BivariateSeries(self._order, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self._order == other._order and dict(self._terms) == dict(other._terms)

    __hash__ = None  # type: ignore[assignment]

    def __iter__(self) -> Iterator[tuple[tuple[int, int], Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*N^{s}*t^{m}" for (m, s), c in self) or "0"
        return f"BivariateSeries(T={self._order}: {body})"


class UnivariateSeries:
    """Immutable truncated series in t alone (N already fixed)."""

    __slots__ = ("_order", "_coeffs")

    def __init__(self, order: int, coefficients: Mapping[int, Scalar] | None = None):
        _check_order(order)
        clean: dict[int, Fraction] = {}
        for m, c in (coefficients or {}).items():
            if not 1 <= m <= order:
                raise PreconditionError(f"t degree {m} outside 1..{order}")
            c = Fraction(c)
            if c:
                clean[m] = c
        self._order = order
        self._coeffs = MappingProxyType(clean)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coefficients(self) -> Mapping[int, Fraction]:
        return self._coeffs

    def coefficient(self, m: int) -> Fraction:
        return self._coeffs.get(m, Fraction(0))

    def as_list(self) -> list[Fraction]:
        """Coefficients of t^1..t^T in order."""
        return [self.coefficient(m) for m in range(1, self._order + 1)]

    def __add__(self, other: UnivariateSeries) -> UnivariateSeries:
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        if other._order != self._order:
            raise PreconditionError(f"truncation orders differ: {self._order} vs {other._order}")
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return UnivariateSeries(self._order, out)

    def __neg__(self) -> UnivariateSeries:
        return UnivariateSeries(self._order, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: UnivariateSeries) -> UnivariateSeries:
        return self + (-other)

    def __mul__(self, other: UnivariateSeries | Scalar) -> UnivariateSeries:
        if isinstance(other, (int, Fraction)):
            return UnivariateSeries(self._order, {m: c * other for m, c in self._coeffs.items()})
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        if other._order != self._order:
            raise PreconditionError(f"truncation orders differ: {self._order} vs {other._order}")
        out: dict[int, Fraction] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                if m1 + m2 <= self._order:
                    out[m1 + m2] = out.get(m1 + m2, Fraction(0)) + c1 * c2
        return UnivariateSeries(self._order, out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnivariateSeries):
            return NotImplemented
        return self._order == other._order and dict(self._coeffs) == dict(other._coeffs)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{m}" for m, c in sorted(self._coeffs.items())) or "0"
        return f"UnivariateSeries(T={self._order}: {body})"


def _as_poly(weight: Weight) -> P.Poly:
    if isinstance(weight, (int, Fraction)):
        return P.normalize([weight])
    return P.normalize(weight)


def log_one_minus(p_coeff: int, weight: Weight, order: int) -> BivariateSeries:
    """``weight(N) * log(1 - p t)`` truncated at t^order.

    ``weight`` is a scalar or the coefficient sequence of a polynomial in N.
    """
    if p_coeff < 1:
        raise PreconditionError(f"p_coeff must be >= 1, got {p_coeff}")
    _check_order(order)
    w = _as_poly(weight)
    by_degree = {m: P.scale(w, Fraction(-(p_coeff**m), m)) for m in range(1, order + 1)}
    return BivariateSeries.from_polynomials(order, by_degree)


def log_one_minus_univariate(p_coeff: int, weight: Scalar, order: int) -> UnivariateSeries:
    """``weight * log(1 - p t)`` with a numeric weight."""
    if p_coeff < 1:
        raise PreconditionError(f"p_coeff must be >= 1, got {p_coeff}")
    _check_order(order)
    return UnivariateSeries(
        order, {m: Fraction(-(p_coeff**m), m) * weight for m in range(1, order + 1)}
    )


def penner_prefactor_series(order: int) -> BivariateSeries:
    """N * log(sqrt(2 pi t) / (Gamma(1/t) (e t)^(1/t))) as an asymptotic series.

    Stirling's series for log Gamma(1/t) cancels every log, 1/t and log(2 pi)
    piece, leaving ``-sum_k B_2k / (2k (2k-1)) t^(2k-1)``.
    """
    _check_order(order)
    terms = {}
    for k in range(1, (order + 1) // 2 + 1):
        terms[(2 * k - 1, 1)] = -bernoulli_number(2 * k) / (2 * k * (2 * k - 1))
    return BivariateSeries(order, terms)


def extract_coefficient(series: BivariateSeries, s: int, m: int) -> Fraction:
    """Raw coefficient of N^s t^m (no s!(-1)^s normalization)."""
    if s < 0:
        raise PreconditionError(f"N degree must be >= 0, got {s}")
    if m < 1:
        raise PreconditionError(f"t degree must be >= 1, got {m}")
    if m > series.order:
        raise TruncationError(f"t^{m} requested but series is truncated at t^{series.order}")
    return series.coefficient(m, s)

