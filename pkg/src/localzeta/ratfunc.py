"""Exact rational functions in one variable t over the integers.

Polynomials are coefficient sequences, constant term first.  The canonical
form of a rational function clears all denominators, removes the
polynomial gcd over Q, divides out the joint integer content, and makes
the lowest-order nonzero denominator coefficient positive — so two equal
functions have bit-identical representations, and cross-multiplied
equality is available for everything else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PoleAtPoint

Coeffs = Sequence[Fraction | int]


def poly_trim(coeffs: Coeffs) -> list[Fraction]:
    out = [Fraction(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out or [Fraction(0)]


def poly_is_zero(coeffs: Coeffs) -> bool:
    return all(c == 0 for c in coeffs)


def poly_add(a: Coeffs, b: Coeffs) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_sub(a: Coeffs, b: Coeffs) -> list[Fraction]:
    return poly_add(a, [-Fraction(c) for c in b])


def poly_mul(a: Coeffs, b: Coeffs) -> list[Fraction]:
    if poly_is_zero(a) or poly_is_zero(b):
        return [Fraction(0)]
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_shift(a: Coeffs, k: int) -> list[Fraction]:
    """Multiply by t**k."""
    if poly_is_zero(a):
        return [Fraction(0)]
    return poly_trim([Fraction(0)] * k + [Fraction(c) for c in a])


def poly_eval(a: Coeffs, x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(a)):
        acc = acc * x + c
    return acc


def poly_divmod(a: Coeffs, b: Coeffs) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q; b must be nonzero."""
    rem = poly_trim(a)
    den = poly_trim(b)
    if poly_is_zero(den):
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(rem) - len(den) + 1, 1)
    while not poly_is_zero(rem) and len(rem) >= len(den):
        shift = len(rem) - len(den)
        factor = rem[-1] / den[-1]
        quot[shift] = factor
        for i, c in enumerate(den):
            rem[shift + i] -= factor * c
        # exact arithmetic: the leading term cancels, so the degree drops
        rem = poly_trim(rem[: len(den) + shift - 1] or [Fraction(0)])
    return poly_trim(quot), rem


def _content(ints: Iterable[int]) -> int:
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    return g or 1


def _primitive(coeffs: Coeffs) -> list[int]:
    """Integer multiple of coeffs with content 1 and positive leading coefficient."""
    cs = poly_trim(coeffs)
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    g = _content(ints)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def poly_gcd(a: Coeffs, b: Coeffs) -> list[int]:
    """Gcd over Q, returned primitive over Z with positive leading coefficient."""
    x, y = poly_trim(a), poly_trim(b)
    if poly_is_zero(x):
        return _primitive(y) if not poly_is_zero(y) else [1]
    while not poly_is_zero(y):
        _, r = poly_divmod(x, y)
        x, y = y, ([Fraction(c) for c in _primitive(r)] if not poly_is_zero(r) else r)
    return _primitive(x)


@dataclass(frozen=True)
class RationalFunctionT:
    """numerator(t) / denominator(t) with integer coefficients, constant first.

    Values produced by make_ratfunc are canonical; raw construction is also
    allowed (the register correspondence uses coefficients mod p, where the
    canonical reduction over Q would be meaningless).
    """

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]


def make_ratfunc(num: Coeffs, den: Coeffs) -> RationalFunctionT:
    """Canonical rational function from rational coefficient sequences.

    Every step scales numerator and denominator jointly, so the value is
    preserved exactly.
    """
    n = poly_trim(num)
    d = poly_trim(den)
    if poly_is_zero(d):
        raise ZeroDivisionError("zero denominator")
    if poly_is_zero(n):
        return RationalFunctionT((0,), (1,))
    lcm = 1
    for c in n + d:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ni = [int(c * lcm) for c in n]
    di = [int(c * lcm) for c in d]
    g = poly_gcd(ni, di)
    if len(g) > 1:
        qn, rn = poly_divmod(ni, g)
        qd, rd = poly_divmod(di, g)
        assert poly_is_zero(rn) and poly_is_zero(rd)
        assert all(c.denominator == 1 for c in qn + qd)  # Gauss: quotients stay integral
        ni = [int(c) for c in qn]
        di = [int(c) for c in qd]
    scale = math.gcd(_content(ni), _content(di))
    if next(x for x in di if x != 0) < 0:
        scale = -scale
    ni = [x // scale for x in ni]
    di = [x // scale for x in di]
    return RationalFunctionT(tuple(ni), tuple(di))


def rf_equal(r1: RationalFunctionT, r2: RationalFunctionT) -> bool:
    """True iff n1*d2 = n2*d1 as integer polynomials."""
    lhs = poly_mul(r1.numerator, r2.denominator)
    rhs = poly_mul(r2.numerator, r1.denominator)
    return lhs == rhs


def rf_eval(r: RationalFunctionT, t0: Fraction | int) -> Fraction:
    """Exact evaluation; PoleAtPoint when the denominator vanishes."""
    den = poly_eval(r.denominator, t0)
    if den == 0:
        raise PoleAtPoint(f"pole at t = {t0}")
    return poly_eval(r.numerator, t0) / den


def rf_add(r1: RationalFunctionT, r2: RationalFunctionT) -> RationalFunctionT:
    return make_ratfunc(
        poly_add(
            poly_mul(r1.numerator, r2.denominator),
            poly_mul(r2.numerator, r1.denominator),
        ),
        poly_mul(r1.denominator, r2.denominator),
    )


def rf_mul(r1: RationalFunctionT, r2: RationalFunctionT) -> RationalFunctionT:
    return make_ratfunc(
        poly_mul(r1.numerator, r2.numerator),
        poly_mul(r1.denominator, r2.denominator),
    )


def rf_from_poly(coeffs: Coeffs) -> RationalFunctionT:
    return make_ratfunc(coeffs, [1])


RF_ONE = RationalFunctionT((1,), (1,))


def rf_series(r: RationalFunctionT, count: int) -> list[Fraction]:
    """First `count` power-series coefficients, by exact long division."""
    den = list(r.denominator)
    if den[0] == 0:
        raise PoleAtPoint("series expansion needs a nonzero constant denominator term")
    num = list(r.numerator)
    out: list[Fraction] = []
    for k in range(count):
        c = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            c -= den[j] * out[k - j]
        out.append(c / den[0])
    return out


def poly_format(coeffs: Sequence[int], var: str = "t") -> str:
    """Human-readable polynomial, lowest degree first: e.g. '5 - t + 2*t^3'."""
    if poly_is_zero(coeffs):
        return "0"
    parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = f"{mag}"
        elif k == 1:
            body = var if mag == 1 else f"{mag}*{var}"
        else:
            body = f"{var}^{k}" if mag == 1 else f"{mag}*{var}^{k}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def rf_format(r: RationalFunctionT, var: str = "t") -> str:
    num = poly_format(r.numerator, var)
    if r.denominator == (1,):
        return num
    den = poly_format(r.denominator, var)
    if len(r.numerator) > 1:
        num = f"({num})"
    if len(r.denominator) > 1 or r.denominator[0] < 0:
        den = f"({den})"
    return f"{num}/{den}"
