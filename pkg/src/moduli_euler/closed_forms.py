"""Closed-form Euler characteristics and the Bernoulli identities behind them.

Convolution sums ``sum_r C(n, r) B_{n-r} B_r q^r`` appear in two guises: the
``xi`` polynomial sums from r = 0, the rearranged odd-g identity from r = 1.
:func:`bernoulli_convolution` takes the starting index explicitly so both
readings can be checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Iterator

from .errors import PreconditionError
from .exact_math import (
    bernoulli_index_range,
    bernoulli_number,
    bernoulli_polynomial,
    weighted_bernoulli_sum,
)
from .ghj import CLOSED_FORM, XiRecord, product_identity_sides

__all__ = [
    "IDENTITY_NAMES",
    "IdentityReport",
    "Counterexample",
    "bernoulli_convolution",
    "chi_orbifold",
    "xi_even",
    "xi_odd",
    "xi_ghj_polynomial",
    "xi_closed",
    "integrality_composite",
    "check_identity",
]


def _check_gs(g: int, s: int) -> None:
    if g < 1 or s < 0 or g + s < 2:
        raise PreconditionError(f"need g >= 1, s >= 0, g + s >= 2; got g={g}, s={s}")


def _require_odd(g: int, what: str) -> None:
    if g % 2 == 0:
        raise PreconditionError(f"{what} is defined for odd g only, got g={g}")


def bernoulli_convolution(n: int, q: int | Fraction, start: int = 0) -> Fraction:
    """sum_{r=start}^{n} C(n, r) B_{n-r} B_r q^r."""
    q = Fraction(q)
    return sum(
        (comb(n, r) * bernoulli_number(n - r) * bernoulli_number(r) * q**r for r in range(start, n + 1)),
        Fraction(0),
    )


def chi_orbifold(g: int, s: int) -> Fraction:
    """Orbifold Euler characteristic of M_g^s, odd g."""
    _check_gs(g, s)
    _require_odd(g, "chi(M_g^s)")
    return Fraction((-1) ** s * factorial(g + s - 2), (g + 1) * factorial(g - 1)) * bernoulli_number(g + 1)


def xi_even(q: int, g: int, s: int) -> Fraction:
    _check_gs(g, s)
    if g % 2:
        raise PreconditionError(f"even-g formula called with odd g={g}")
    return Fraction((-1) ** s * factorial(g + s - 2), 2 * factorial(g)) * (q**g - q) * bernoulli_number(g)


def xi_odd(q: int, g: int, s: int) -> Fraction:
    """chi(M_g^s) plus the Bernoulli-polynomial correction at rational points i/q."""
    _check_gs(g, s)
    _require_odd(g, "odd-g formula")
    correction = Fraction((-1) ** s * factorial(g + s - 2), factorial(g)) * q ** (g - 1)
    return chi_orbifold(g, s) + correction * weighted_bernoulli_sum(g, q)


def xi_ghj_polynomial(q: int, g: int, s: int) -> Fraction:
    """The odd-g GHJ polynomial in q, convolution read from r = 0."""
    _check_gs(g, s)
    _require_odd(g, "GHJ odd-g polynomial")
    bracket = (g + 1) * bernoulli_number(g) * Fraction(q) ** g + bernoulli_convolution(g + 1, q, 0)
    return Fraction(factorial(g + s - 2) * (-1) ** (s + 1), factorial(g + 1)) * bracket


def xi_closed(q: int, g: int, s: int) -> XiRecord:
    if q < 1:
        raise PreconditionError(f"q must be >= 1, got {q}")
    value = xi_even(q, g, s) if g % 2 == 0 else xi_odd(q, g, s)
    return XiRecord(g, s, q, value, CLOSED_FORM)


def integrality_composite(g: int, q: int) -> Fraction:
    """2 q^(g-1) sum_i i B_g(i/q) - (B_{g+1} + conv_{r>=1}(g+1, q)/(g+1)).

    Algebraically this is q^g sum_i B_g(i/q), an integer for odd g > 1.
    """
    _require_odd(g, "integrality composite")
    first = 2 * Fraction(q) ** (g - 1) * sum(
        (i * bernoulli_polynomial(g, Fraction(i, q)) for i in bernoulli_index_range(q)),
        Fraction(0),
    )
    return first - (bernoulli_number(g + 1) + bernoulli_convolution(g + 1, q, 1) / (g + 1))


# --- identity sweeps -------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    params: dict
    lhs: object
    rhs: object


@dataclass
class IdentityReport:
    identity_name: str
    parameter_range: str
    checked: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


Case = tuple[dict, object, object]


def _p21(q_values: Iterable[int], g_values: Iterable[int]) -> Iterator[Case]:
    for q in q_values:
        rhs = -(Fraction(q * q, 12) - Fraction(q, 4) + Fraction(1, 6))
        yield {"q": q}, weighted_bernoulli_sum(1, q), rhs


def _p22(q_values, g_values) -> Iterator[Case]:
    for g in g_values:
        if g < 3 or g % 2 == 0:
            continue
        for q in q_values:
            rhs = -Fraction(q) ** (1 - g) * (
                bernoulli_number(g + 1) + bernoulli_convolution(g + 1, q, 1) / (g + 1)
            )
            yield {"g": g, "q": q}, weighted_bernoulli_sum(g, q), rhs


def _identity1(q_values, g_values) -> Iterator[Case]:
    # g here is the half-degree: the convolution has degree 2g
    for g in g_values:
        if g < 2:
            continue
        n = 2 * g
        for q in q_values:
            lhs = bernoulli_convolution(n, q, 0)
            rhs = (1 - n) * bernoulli_number(n) - n * Fraction(q) ** (n - 2) * weighted_bernoulli_sum(n - 1, q)
            yield {"g": g, "q": q}, lhs, rhs


def _identity2(q_values, g_values) -> Iterator[Case]:
    for g in g_values:
        if g < 2:
            continue
        n = 2 * g
        yield {"g": g}, bernoulli_convolution(n, 2, 0), (1 - n) * bernoulli_number(n)


def _identity2_literal(q_values, g_values) -> Iterator[Case]:
    """The r = 1 starting index taken at face value; expected to fail."""
    for g in g_values:
        if g < 2:
            continue
        n = 2 * g
        lhs = sum(
            (comb(n, 2 * r) * bernoulli_number(n - 2 * r) * bernoulli_number(2 * r) * 2 ** (2 * r) for r in range(1, g + 1)),
            Fraction(0),
        )
        yield {"g": g}, lhs, (1 - n) * bernoulli_number(n)


def _am(q_values, g_values) -> Iterator[Case]:
    # lhs: the value; rhs: its integer part -- they agree iff the value is an integer
    for g in g_values:
        if g < 3 or g % 2 == 0:
            continue
        for q in q_values:
            for i in range(q + 1):
                v = Fraction(q) ** g * bernoulli_polynomial(g, Fraction(i, q))
                yield {"g": g, "q": q, "i": i, "quantity": "q^g B_g(i/q)"}, v, Fraction(v.numerator // v.denominator)
            v = integrality_composite(g, q)
            yield {"g": g, "q": q, "quantity": "composite"}, v, Fraction(v.numerator // v.denominator)


def _p20(q_values, g_values, s_max: int = 5) -> Iterator[Case]:
    for q in q_values:
        for g in g_values:
            if g % 2 == 0:
                continue
            for s in range(s_max + 1):
                if g + s < 2:
                    continue
                yield {"q": q, "g": g, "s": s}, xi_odd(q, g, s), xi_ghj_polynomial(q, g, s)


def _p8(q_values, k_values) -> Iterator[Case]:
    for q in q_values:
        if q < 2:
            continue
        for k in k_values:
            lhs, rhs = product_identity_sides(q, k)
            yield {"q": q, "K": k}, lhs, rhs


_IDENTITIES: dict[str, Callable[..., Iterator[Case]]] = {
    "p8": _p8,
    "p20": _p20,
    "p20_equality": _p20,
    "p21": _p21,
    "p22": _p22,
    "identity1": _identity1,
    "identity2": _identity2,
    "identity2_literal": _identity2_literal,
    "am": _am,
    "am_integrality": _am,
}

IDENTITY_NAMES = tuple(_IDENTITIES)


def _fmt(value: object) -> object:
    if isinstance(value, tuple):
        return [str(c) for c in value]
    return value


def check_identity(name: str, q_values: Iterable[int], g_values: Iterable[int] = (1,)) -> IdentityReport:
    """Evaluate both sides of a named identity over the given grid.

    ``g_values`` is the K range for ``p8`` and the half-degree g for
    ``identity1``/``identity2``; elsewhere it is the genus. Values outside an
    identity's domain (even g for ``p22``, q < 2 for ``p8``) are skipped.
    """
    try:
        gen = _IDENTITIES[name]
    except KeyError:
        raise PreconditionError(f"unknown identity {name!r}; choose from {', '.join(IDENTITY_NAMES)}") from None
    q_values, g_values = list(q_values), list(g_values)
    if any(q < 1 for q in q_values):
        raise PreconditionError("q values must be >= 1")
    if any(q > 12 for q in q_values) or any(g > 15 for g in g_values):
        raise PreconditionError("identity sweeps are limited to q <= 12, g <= 15")
    desc = f"q in {_span(q_values)}, {'K' if name == 'p8' else 'g'} in {_span(g_values)}"
    report = IdentityReport(name, desc)
    for params, lhs, rhs in gen(q_values, g_values):
        report.checked += 1
        if lhs != rhs:
            report.counterexamples.append(Counterexample(params, _fmt(lhs), _fmt(rhs)))
    return report


def _span(values: list[int]) -> str:
    if not values:
        return "{}"
    if values == list(range(values[0], values[-1] + 1)):
        return f"{values[0]}..{values[-1]}"
    return "{" + ", ".join(map(str, values)) + "}"
