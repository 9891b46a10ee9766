"""Exact rational scalars and the generalized binomial coefficient.

Every number that reaches a verdict in this package is a Rational; no
float ever enters a comparison.  Rational is the standard library
Fraction, which already stores canonically reduced arbitrary-precision
values and compares by exact cross-multiplication.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact Rational.

    Only plain integer-over-integer strings are accepted; decimal or
    exponent notation is rejected so a lossy value can never sneak in.
    """
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational literal: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator: {text!r}") from None


def format_rational(value: Fraction) -> str:
    """Render exactly, as "p/q" or "p" when the denominator is 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def genbinom(y, k: int) -> Fraction:
    """Generalized binomial: the number of ways to choose k from y+k slots,
    extended to rational y.

    Piecewise by convention: k = 0 gives 1 whatever y is; negative y with
    k >= 1 gives 0; otherwise the product (y+1)(y+2)...(y+k) / k!.
    y = 0 falls in the product branch and gives 1.
    """
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    if k == 0:
        return Fraction(1)
    y = Fraction(y)
    if y < 0:
        return Fraction(0)
    num = Fraction(1)
    for i in range(1, k + 1):
        num *= y + i
    return num / math.factorial(k)


def falling_sum_check(x, a: int, m: int, k: int) -> bool:
    """Check the telescoping identity

        sum_{i=a..m} C(x-i, k) == C(x-a+1, k+1) - C(x-m, k+1)

    with every C expressed through genbinom (C(z, j) = genbinom(z-j, j)).
    Requires positive integers a <= m, k, and x - m - k >= 0 so that all
    the binomials sit in the product branch.
    """
    if a < 1 or m < 1 or k < 1:
        raise ValueError("a, m, k must be positive integers")
    if a > m:
        raise ValueError("need a <= m")
    x = Fraction(x)
    if x - m - k < 0:
        raise ValueError("need x - m - k >= 0")
    lhs = sum((genbinom(x - i - k, k) for i in range(a, m + 1)), Fraction(0))
    rhs = genbinom(x - a - k, k + 1) - genbinom(x - m - k - 1, k + 1)
    return lhs == rhs
