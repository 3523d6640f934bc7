"""Double-scaling limit of the free energy, mu = N (1 - t) fixed.

The limit is a trans-series in mu. ``log mu`` factors are kept as tags on
:class:`ContinuumTerm`; only their rational coefficients are computed.

Summing over punctures turns ``sum_s (n+s-1)!/s! t^(n+s)`` into
``(n-1)! (t/(1-t))^n``, which is what makes each genus collapse onto a single
power of mu. :func:`resummation_check` verifies this term by term against
the discrete xi values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .closed_forms import xi_closed
from .errors import PreconditionError
from .exact_math import bernoulli_number, weighted_bernoulli_sum
from .series import UnivariateSeries, log_one_minus_univariate

__all__ = [
    "DEFAULT_GENUS_MAX",
    "EVEN",
    "ODD",
    "ContinuumTerm",
    "ContinuumExpansion",
    "even_genus_coefficient",
    "odd_genus_parts",
    "even_sector_expansion",
    "odd_sector_expansion",
    "ResummationReport",
    "resummation_check",
]

DEFAULT_GENUS_MAX = 8
EVEN = "even_g"
ODD = "odd_g"


@dataclass(frozen=True)
class ContinuumTerm:
    """``coefficient * mu^mu_power * (log mu)^log_mu_power``."""

    mu_power: int
    log_mu_power: int
    coefficient: Fraction
    mu_squared_log: bool = False

    def __post_init__(self) -> None:
        if self.log_mu_power not in (0, 1):
            raise ValueError("log_mu_power must be 0 or 1")
        if self.log_mu_power and self.mu_power not in (0, 1, 2):
            raise ValueError("log mu only multiplies mu^0, mu^1 or mu^2")
        if self.mu_squared_log != (self.log_mu_power == 1 and self.mu_power == 2):
            raise ValueError("mu_squared_log flag must match a mu^2 log mu term")
        if self.coefficient == 0:
            raise ValueError("zero terms are not stored")

    @property
    def key(self) -> tuple[int, int]:
        return (self.mu_power, self.log_mu_power)

    def describe(self) -> str:
        mu = {0: "", 1: "mu"}.get(self.mu_power, f"mu^{self.mu_power}")
        factors = [f for f in (mu, "log(mu)" if self.log_mu_power else "") if f]
        return "*".join(factors) or "1"


@dataclass(frozen=True)
class ContinuumExpansion:
    q: int
    sector: str
    terms: tuple[ContinuumTerm, ...] = field(default_factory=tuple)

    def coefficient(self, mu_power: int, log_mu_power: int = 0) -> Fraction:
        for term in self.terms:
            if term.key == (mu_power, log_mu_power):
                return term.coefficient
        return Fraction(0)


def _collect(q: int, sector: str, raw: list[tuple[int, int, Fraction]]) -> ContinuumExpansion:
    merged: dict[tuple[int, int], Fraction] = {}
    for mu_power, log_power, c in raw:
        key = (mu_power, log_power)
        merged[key] = merged.get(key, Fraction(0)) + c
    terms = [
        ContinuumTerm(p, l, c, mu_squared_log=(p == 2 and l == 1))
        for (p, l), c in merged.items()
        if c
    ]
    terms.sort(key=lambda term: (-term.mu_power, -term.log_mu_power))
    return ContinuumExpansion(q, sector, tuple(terms))


def even_genus_coefficient(q: int, g: int) -> Fraction:
    """Coefficient of mu^(1-2g): (q^(2g-1) - 1) B_2g / (2 (2g) (2g-1))."""
    return (q ** (2 * g - 1) - 1) * bernoulli_number(2 * g) / (2 * (2 * g) * (2 * g - 1))


def odd_genus_parts(q: int, g: int) -> tuple[Fraction, Fraction]:
    """(Penner part, deformation part) of the mu^(2-2g) coefficient, g >= 2."""
    if g < 2:
        raise PreconditionError(f"odd-sector power terms start at g = 2, got {g}")
    penner = bernoulli_number(2 * g) / (q * (2 * g - 2) * (2 * g))
    deformation = (
        Fraction(q) ** (2 * g - 3)
        * weighted_bernoulli_sum(2 * g - 1, q)
        / ((2 * g - 1) * (2 * g - 2))
    )
    return penner, deformation


def _odd_log_parts(q: int) -> tuple[Fraction, Fraction]:
    penner = Fraction(-1, 12 * q)
    deformation = (Fraction(q * q, 12) - Fraction(q, 4) + Fraction(1, 6)) / q
    return penner, deformation


def _check_q(q: int) -> None:
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")


def even_sector_expansion(q: int, genus_max: int = DEFAULT_GENUS_MAX) -> ContinuumExpansion:
    _check_q(q)
    if genus_max < 1:
        raise PreconditionError(f"genus_max must be >= 1, got {genus_max}")
    raw = [(1, 1, (Fraction(1, q) - 1) / 2)]
    raw += [(1 - 2 * g, 0, even_genus_coefficient(q, g)) for g in range(1, genus_max + 1)]
    return _collect(q, EVEN, raw)


def odd_sector_expansion(q: int, genus_max: int = DEFAULT_GENUS_MAX) -> ContinuumExpansion:
    """The log mu coefficient combines -1/(12q) with (q^2/12 - q/4 + 1/6)/q."""
    _check_q(q)
    if genus_max < 2:
        raise PreconditionError(f"genus_max must be >= 2, got {genus_max}")
    raw = [(2, 1, Fraction(1, 2 * q)), (0, 1, sum(_odd_log_parts(q)))]
    raw += [(2 - 2 * g, 0, sum(odd_genus_parts(q, g))) for g in range(2, genus_max + 1)]
    return _collect(q, ODD, raw)


# --- puncture resummation ---------------------------------------------------


@dataclass(frozen=True)
class ResummationReport:
    q: int
    g: int
    sector: str
    order: int
    direct: tuple[Fraction, ...]
    resummed: tuple[Fraction, ...]

    @property
    def passed(self) -> bool:
        return self.direct == self.resummed

    @property
    def first_mismatch(self) -> int | None:
        for m, (a, b) in enumerate(zip(self.direct, self.resummed), start=1):
            if a != b:
                return m
        return None


def _geometric_power(n: int, order: int) -> UnivariateSeries:
    """(t/(1-t))^n, built by repeated truncated multiplication."""
    base = UnivariateSeries(order, {m: 1 for m in range(1, order + 1)})
    out = base
    for _ in range(n - 1):
        out = out * base
    return out


def resummation_check(q: int, g: int, punctures: int, order: int, sector: str = EVEN) -> ResummationReport:
    """Sum the genus-g part of the scaled free energy over punctures and compare
    with the resummed closed form, as exact series in t through ``order``.

    Direct side: ``(1/q) sum_s (-1)^s/s! xi^s_h(1/q) t^(h+s-1)`` for
    ``s <= punctures``, with h = 2g (even sector) or 2g - 1 (odd sector).
    Resummed side: the continuum mu-coefficient times ``(t/(1-t))^(h-1)``,
    or the log mu coefficient times ``log(1 - t)`` for the odd-sector g = 1
    term. Orders beyond ``h - 1 + punctures`` are not compared.
    """
    _check_q(q)
    if punctures < 2:
        raise PreconditionError(f"need at least 2 punctures, got {punctures}")
    if sector not in (EVEN, ODD, "even", "odd"):
        raise PreconditionError(f"unknown sector {sector!r}")
    sector = EVEN if sector in (EVEN, "even") else ODD
    h = 2 * g if sector == EVEN else 2 * g - 1
    if g < 1:
        raise PreconditionError(f"genus must be >= 1, got {g}")
    lowest = max(h - 1, 1)
    if order < lowest:
        raise PreconditionError(f"order {order} below the lowest power t^{lowest}")

    direct: dict[int, Fraction] = {}
    for s in range(punctures + 1):
        m = h + s - 1
        if h + s < 2 or m > order:
            continue
        xi = xi_closed(q, h, s).value
        direct[m] = Fraction((-1) ** s, factorial(s)) * xi / q
    direct_series = UnivariateSeries(order, direct)

    if sector == EVEN:
        resummed = _geometric_power(h - 1, order) * even_genus_coefficient(q, g)
    elif g == 1:
        resummed = log_one_minus_univariate(1, sum(_odd_log_parts(q)), order)
    else:
        resummed = _geometric_power(h - 1, order) * sum(odd_genus_parts(q, g))

    # orders past the retained punctures are not comparable
    top = min(order, h - 1 + punctures)
    return ResummationReport(
        q,
        g,
        sector,
        top,
        tuple(direct_series.as_list()[:top]),
        tuple(resummed.as_list()[:top]),
    )
