"""Minimal certified twists via exact polynomial sign analysis.

Twisting the input by k steps of the polarization turns both stability
inequalities into polynomial sign conditions in k.  Clearing
denominators gives polynomials whose top terms cancel exactly, leaving
positive leading coefficients, so a Cauchy root bound plus an exhaustive
integer scan below it certifies positivity for every k from some point
on.  The certificate records the scan, the bound, and the polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import bound_low
from .errors import InconsistentInputError, UsageError
from .exactnum import format_rational, genbinom, parse_rational
from .varieties import Variety


class Poly:
    """Dense univariate polynomial with exact Rational coefficients,
    constant term first.  The zero polynomial has no coefficients and
    degree -1.  Immutable once built."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def variable(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _promote(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,))
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coeff(i) + other.coeff(i) for i in range(size)))

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def compose_linear(self, a, b) -> "Poly":
        """Substitute the variable by a*k + b."""
        inner = Poly((b, a))
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items) -> "Poly":
        return cls(tuple(parse_rational(s) for s in items))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def _genbinom_poly(shift: Fraction, count: int) -> Poly:
    """The product (k + shift + 1)...(k + shift + count) / count! as a
    polynomial in k; the polynomial continuation of genbinom(k + shift, count)."""
    acc = Poly((1,))
    for i in range(1, count + 1):
        acc = acc * Poly((Fraction(shift) + i, 1))
    return acc * Fraction(1, math.factorial(count))


@dataclass(frozen=True)
class HilbertPoly:
    """Section-count polynomial plus the twist from which it is exact."""

    poly: Poly
    regularity: int


def validate_hilbert(variety: Variety, d0: int, hp: HilbertPoly) -> None:
    """Check the two coefficients that geometry pins down: the leading one
    is h_top/n! and the next is (d0 + c1_dot_h/2)/(n-1)!.

    Lower coefficients depend on data outside the inputs, so they are
    the user's responsibility.
    """
    n = variety.dim
    if hp.poly.degree != n:
        raise InconsistentInputError(
            f"hilbert polynomial must have degree {n}, got degree {hp.poly.degree}"
        )
    want_top = Fraction(variety.h_top, math.factorial(n))
    if hp.poly.coeff(n) != want_top:
        raise InconsistentInputError(
            f"hilbert leading coefficient must be h_top/n! = {want_top}, "
            f"got {hp.poly.coeff(n)}"
        )
    want_next = (d0 + Fraction(variety.c1_dot_h, 2)) / math.factorial(n - 1)
    if hp.poly.coeff(n - 1) != want_next:
        raise InconsistentInputError(
            f"hilbert second coefficient must be (d0 + c1_dot_h/2)/(n-1)! = {want_next}, "
            f"got {hp.poly.coeff(n - 1)}"
        )


@dataclass(frozen=True)
class TwistExpansion:
    """bound_high at twisted degree d0 + k*h_top - 1, as a polynomial in k,
    agreeing with the piecewise values from k_pos on."""

    poly: Poly
    k_pos: int


def bound_high_poly(variety: Variety, d0: int) -> TwistExpansion:
    n, h, g = variety.dim, variety.h_top, variety.genus
    if d0 < 0:
        raise InconsistentInputError(f"degree must be >= 0, got {d0}")
    shift_main = Fraction(d0 - g, h) - 1
    poly = h * _genbinom_poly(shift_main, n) - 1
    if n >= 2:
        shift_cross = Fraction(d0 - 2 * g + 1, h) - 1
        # the last factor has constant argument, so the piecewise value is
        # itself constant in k and safe to bake in
        cross = genbinom(Fraction(2 * g - 2, h), n - 1)
        poly = poly + Fraction((n - 1) * (n + g - 1), n) * _genbinom_poly(shift_cross, n - 2) * cross
    # smallest k with every binomial argument >= 0, so the polynomial and
    # piecewise readings agree pointwise
    k_pos = math.ceil(Fraction(max(2 * g - 2, g - 1) + h + 1 - d0, h))
    return TwistExpansion(poly=poly, k_pos=k_pos)


@dataclass(frozen=True)
class ConditionPolys:
    cond2: Poly
    cond1: Poly | None
    k_pos: int


def build_condition_polys(variety: Variety, d0: int, hilbert: HilbertPoly) -> ConditionPolys:
    """Clear denominators in both stability inequalities at twisted degree
    d(k) = d0 + k*h_top.

    cond2 = (d(k) - 1)*(P(k) - 1) - d(k)*bound_high_poly(k): its degree
    n+1 terms cancel exactly, leaving degree n with positive leading
    coefficient h_top*(1 - 1/n)/(n-1)!.  cond1 (only when g >= 2) =
    (2g-2)*(P(k) - 1) - d(k)*bound_low(n, h, 2g-2).
    """
    n, h, g = variety.dim, variety.h_top, variety.genus
    if n < 2:
        raise UsageError("twist certificates need dimension >= 2")
    validate_hilbert(variety, d0, hilbert)
    expansion = bound_high_poly(variety, d0)
    dpoly = Poly((d0, h))
    p_minus_1 = hilbert.poly - 1
    cond2 = (dpoly - 1) * p_minus_1 - dpoly * expansion.poly
    want_lead = Fraction(h, 1) * (1 - Fraction(1, n)) / math.factorial(n - 1)
    if cond2.degree != n or cond2.leading != want_lead or want_lead <= 0:
        raise RuntimeError(
            f"condition polynomial has degree {cond2.degree}, leading "
            f"{cond2.leading if cond2.coeffs else 0}; expected degree {n} with leading {want_lead}"
        )
    cond1 = None
    if g >= 2:
        cond1 = (2 * g - 2) * p_minus_1 - dpoly * bound_low(n, h, 2 * g - 2)
    return ConditionPolys(cond2=cond2, cond1=cond1, k_pos=expansion.k_pos)


def cauchy_bound(p: Poly) -> Fraction:
    """1 + max|c_i/c_deg| over the non-leading coefficients; every real
    root lies inside this radius."""
    if p.degree < 1:
        raise ValueError("root bound needs a nonconstant polynomial")
    lead = p.leading
    return 1 + max(abs(c / lead) for c in p.coeffs[:-1])


@dataclass(frozen=True)
class ScanRow:
    k: int
    cond2_value: Fraction
    cond1_value: Fraction | None
    passed: bool


@dataclass(frozen=True)
class TwistCertificate:
    k_min: int
    cauchy: Fraction
    scanned_range: tuple[int, int]
    cond2: Poly
    cond1: Poly | None
    k_pos: int
    regularity: int
    scan: tuple[ScanRow, ...]
    notes: tuple[str, ...]


def minimal_stable_twist(variety: Variety, d0: int, hilbert: HilbertPoly) -> TwistCertificate:
    """Least integer twist from which both condition polynomials stay
    strictly positive, hence every larger twist is certified stable.

    All integer points between max(regularity, k_pos) and the Cauchy
    bound are evaluated exactly; beyond the bound there are no real
    roots and the leading coefficients are positive, so positivity is
    permanent.  A zero value counts as a failure for k_min (stability
    needs strict inequalities) and is recorded in the notes.
    """
    polys = build_condition_polys(variety, d0, hilbert)
    start = max(hilbert.regularity, polys.k_pos)
    radii = [cauchy_bound(polys.cond2)]
    if polys.cond1 is not None:
        radii.append(cauchy_bound(polys.cond1))
    radius = max(radii)
    top = math.ceil(radius)

    notes = [
        "raw difference has formal degree dim+1; the top terms cancel exactly, "
        "leaving degree dim with a positive leading coefficient",
    ]
    if polys.cond1 is not None:
        notes.append(
            "genus >= 2, so the low-branch condition is scanned alongside as a "
            "second polynomial"
        )

    rows = []
    last_fail = None
    for k in range(start, top + 1):
        v2 = polys.cond2(k)
        v1 = polys.cond1(k) if polys.cond1 is not None else None
        passed = v2 > 0 and (v1 is None or v1 > 0)
        if not passed:
            last_fail = k
        if v2 == 0 or (v1 is not None and v1 == 0):
            notes.append(
                f"equality at k = {k}: the certificate gives only semistability there"
            )
        rows.append(ScanRow(k=k, cond2_value=v2, cond1_value=v1, passed=passed))

    k_min = start if last_fail is None else last_fail + 1
    for k in range(k_min, max(top + 2, k_min + 2)):
        v2 = polys.cond2(k)
        v1 = polys.cond1(k) if polys.cond1 is not None else Fraction(1)
        if v2 <= 0 or v1 <= 0:
            raise RuntimeError(f"positivity check failed at k = {k} past the scan")

    return TwistCertificate(
        k_min=k_min,
        cauchy=radius,
        scanned_range=(start, top),
        cond2=polys.cond2,
        cond1=polys.cond1,
        k_pos=polys.k_pos,
        regularity=hilbert.regularity,
        scan=tuple(rows),
        notes=tuple(notes),
    )
