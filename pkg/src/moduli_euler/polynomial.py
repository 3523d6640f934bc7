"""Dense univariate polynomials as coefficient tuples (index = degree)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Poly = tuple[Fraction, ...]


def normalize(coeffs: Iterable[Fraction | int]) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    n = max(len(a), len(b))
    return normalize(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def scale(a: Sequence[Fraction], c: Fraction | int) -> Poly:
    return normalize(x * c for x in a)


def mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return normalize(out)


def divmod_poly(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple[Poly, Poly]:
    """Long division; returns (quotient, remainder)."""
    den = normalize(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(normalize(num))
    lead = den[-1]
    shift = len(rem) - len(den)
    if shift < 0:
        return (), tuple(rem)
    quot = [Fraction(0)] * (shift + 1)
    for k in range(shift, -1, -1):
        c = rem[k + len(den) - 1] / lead
        quot[k] = c
        if c:
            for i, d in enumerate(den):
                rem[k + i] -= c * d
    return normalize(quot), normalize(rem[: len(den) - 1])


def evaluate(a: Sequence[Fraction], x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def linear_factor(p: int) -> Poly:
    """The polynomial 1 - p*t."""
    return normalize((1, -p))


def product(factors: Iterable[Sequence[Fraction]]) -> Poly:
    out: Poly = (Fraction(1),)
    for f in factors:
        out = mul(out, f)
    return out
