"""GHJ partition-function products, free energy and coefficient extraction.

With gamma = 1/q and N = qK the partition function (up to the Penner
prefactor) is a single product of linear factors ``(1 - a t)``. Factor ``a``
appears with exponent ``K - ceil(a/q) + 1`` when ``q`` does not divide ``a``
and ``K - a/q`` when it does. The free energy ``q log W`` is therefore a sum
of weighted ``log(1 - a t)`` terms, which we expand two ways:

* formally in N, collecting ``sum_p p^k`` through Faulhaber polynomials so
  every t-coefficient becomes a polynomial in N (:func:`free_energy_formal`);
* for a concrete N, by summing the logarithms directly
  (:func:`free_energy_concrete`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import polynomial as P
from .errors import PreconditionError, TruncationError
from .exact_math import power_sum_polynomial
from .series import (
    DEFAULT_ORDER,
    BivariateSeries,
    UnivariateSeries,
    extract_coefficient,
    log_one_minus_univariate,
    penner_prefactor_series,
)

__all__ = [
    "SERIES_EXTRACTION",
    "CLOSED_FORM",
    "ModelParams",
    "XiRecord",
    "product_identity_sides",
    "factor_multiplicities",
    "free_energy_formal",
    "free_energy_concrete",
    "xi_by_extraction",
    "oracle_check",
    "OracleReport",
]

SERIES_EXTRACTION = "series_extraction"
CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class ModelParams:
    q: int
    order: int = DEFAULT_ORDER
    n_concrete: int | None = None

    def __post_init__(self) -> None:
        if self.q < 1:
            raise PreconditionError(f"q must be >= 1, got {self.q}")
        if self.order < 1:
            raise PreconditionError(f"truncation order must be >= 1, got {self.order}")
        if self.n_concrete is not None:
            if self.n_concrete < 1:
                raise PreconditionError(f"N must be positive, got {self.n_concrete}")
            if self.n_concrete % self.q:
                raise PreconditionError(
                    f"N = {self.n_concrete} is not a multiple of q = {self.q}"
                )

    @property
    def gamma(self) -> Fraction:
        return Fraction(1, self.q)


@dataclass(frozen=True)
class XiRecord:
    g: int
    s: int
    q: int
    value: Fraction
    path: str

    def __post_init__(self) -> None:
        if self.g < 1 or self.s < 0 or self.g + self.s < 2:
            raise PreconditionError(f"need g >= 1, s >= 0, g + s >= 2; got g={self.g}, s={self.s}")
        if self.path not in (SERIES_EXTRACTION, CLOSED_FORM):
            raise ValueError(f"unknown path tag {self.path!r}")


def product_identity_sides(q: int, k: int) -> tuple[P.Poly, P.Poly]:
    """Both sides of the GHJ product identity as expanded polynomials in t.

    Left: ``prod_{l<=K} prod_{j<=ql} (1-jt)`` divided exactly by
    ``prod_{j<=K} (1-qjt)``. Right: ``prod_{j=0}^{K-1} prod_{p=1}^{N-qj-1} (1-pt)``
    with N = qK.
    """
    if q < 2:
        raise PreconditionError(f"product identity is stated for q >= 2, got {q}")
    if k < 1:
        raise PreconditionError(f"K must be >= 1, got {k}")
    n = q * k
    numerator = P.product(
        P.linear_factor(j) for l in range(1, k + 1) for j in range(1, q * l + 1)
    )
    denominator = P.product(P.linear_factor(q * j) for j in range(1, k + 1))
    lhs, remainder = P.divmod_poly(numerator, denominator)
    if remainder:
        raise ArithmeticError(f"denominator does not divide numerator for q={q}, K={k}")
    rhs = P.product(
        P.linear_factor(p) for j in range(k) for p in range(1, n - (q * j + 1) + 1)
    )
    return lhs, rhs


def factor_multiplicities(q: int, n: int) -> dict[int, int]:
    """Exponent of ``(1 - a t)`` in ``q log W`` (prefactor excluded), read off the
    sum-of-logarithms form: ``N - a`` for every a, plus ``r`` extra copies for
    ``a = qp - (q - r)``, r = 1..q-1."""
    ModelParams(q, n_concrete=n)
    k = n // q
    mult = {a: n - a for a in range(1, n + 1)}
    for r in range(1, q):
        for p in range(1, k + 1):
            a = q * p - (q - r)
            mult[a] += r
    return {a: e for a, e in mult.items() if e}


def _class_weight_powers(q: int, j: int) -> Fraction:
    # (1-2/q)^j + 2(1-3/q)^j + ... + (q-2)(1/q)^j
    return sum(
        ((q - 1 - o) * Fraction(o, q) ** j for o in range(1, q - 1)),
        Fraction(0),
    )


@lru_cache(maxsize=64)
def _formal(q: int, order: int, include_prefactor: bool) -> BivariateSeries:
    by_degree: dict[int, P.Poly] = {}
    n_over_q = Fraction(1, q)
    for m in range(1, order + 1):
        s_m = power_sum_polynomial(m).coefficients
        s_m1 = power_sum_polynomial(m + 1).coefficients
        # Penner block: sum_{p<=N} (N - p) log(1 - p t)
        penner = P.add(P.mul((0, 1), s_m), P.scale(s_m1, -1))
        # sum_{p<=N} log(1-pt) - sum_{p<=N/q} log(1-qpt)
        block = P.add(s_m, P.scale(power_sum_polynomial(m).scaled_argument(n_over_q), -(q**m)))
        # congruence classes qp - o, o = 1..q-2, weight q-1-o
        if q >= 3:
            for j in range(m + 1):
                c = _class_weight_powers(q, j)
                if not c:
                    continue
                shifted = power_sum_polynomial(m - j).scaled_argument(n_over_q)
                block = P.add(block, P.scale(shifted, (-1) ** j * comb(m, j) * q**m * c))
        by_degree[m] = P.scale(P.add(penner, block), Fraction(-1, m))
    series = BivariateSeries.from_polynomials(order, by_degree)
    if include_prefactor:
        series = series + penner_prefactor_series(order)
    return series


def free_energy_formal(params: ModelParams, include_prefactor: bool = True) -> BivariateSeries:
    """``q log W_{1/q}(N, t)`` with every t-coefficient a polynomial in N."""
    return _formal(params.q, params.order, include_prefactor)


def free_energy_concrete(params: ModelParams) -> UnivariateSeries:
    """``q log W_{1/q}(N, t)`` at a fixed N, summing the logarithms directly.

    The N * prefactor term is left out.
    """
    if params.n_concrete is None:
        raise PreconditionError("free_energy_concrete needs a concrete N")
    q, n, order = params.q, params.n_concrete, params.order
    k = n // q
    total = UnivariateSeries(order)
    for a in range(1, n + 1):
        if n - a:
            total = total + log_one_minus_univariate(a, n - a, order)
    for r in range(1, q):
        for p in range(1, k + 1):
            total = total + log_one_minus_univariate(q * p - (q - r), r, order)
    return total


def _normalized(series: BivariateSeries, g: int, s: int) -> Fraction:
    return factorial(s) * (-1) ** s * extract_coefficient(series, s, g + s - 1)


def xi_by_extraction(q: int, g: int, s: int, order: int | None = None) -> XiRecord:
    """xi^s_g(1/q) = s! (-1)^s [N^s t^(g+s-1)] q log W.

    The N^0 coefficient of ``log W`` vanishes identically (W = 1 at N = 0), so
    for s = 0 the value is taken from the extracted s = 1 coefficient through
    ``xi^1_g = -(g-1) xi^0_g``, the same puncture relation every extracted
    coefficient with s >= 1 obeys.
    """
    if g < 1 or s < 0 or g + s < 2:
        raise PreconditionError(f"need g >= 1, s >= 0, g + s >= 2; got g={g}, s={s}")
    needed = g + s - 1 if s else g
    if order is None:
        order = needed + 1
    if needed > order:
        raise TruncationError(f"coefficient of t^{needed} needs truncation order >= {needed}, got {order}")
    series = free_energy_formal(ModelParams(q, order))
    if s == 0:
        value = -_normalized(series, g, 1) / (g - 1)
    else:
        value = _normalized(series, g, s)
    return XiRecord(g, s, q, value, SERIES_EXTRACTION)


@dataclass(frozen=True)
class OracleReport:
    q: int
    n: int
    order: int
    formal: tuple[Fraction, ...]
    concrete: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return self.formal == self.concrete

    @property
    def first_mismatch(self) -> int | None:
        for m, (a, b) in enumerate(zip(self.formal, self.concrete), start=1):
            if a != b:
                return m
        return None


def oracle_check(q: int, n: int, order: int) -> OracleReport:
    """Compare the formal-N free energy at N = n with the direct expansion."""
    params = ModelParams(q, order, n)
    formal = free_energy_formal(params, include_prefactor=False).specialize(n)
    concrete = free_energy_concrete(params)
    return OracleReport(q, n, order, tuple(formal.as_list()), tuple(concrete.as_list()))
