"""Closed-form upper bounds on global sections, in both shapes.

Rank-1 bounds come in two branches split at degree 2g-2: a generalized
Clifford inequality below, a Riemann-Roch count above.  Each branch has
a summed form (the shape the restriction-to-hyperplane induction
produces) and a simplified cap (the shape the stability certificate
consumes).  restriction_sum recomputes one induction step by brute
force; it exists so the closed forms can be checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InconsistentInputError
from .exactnum import genbinom
from .varieties import Variety


class Branch(Enum):
    CLIFFORD = "Clifford"
    RIEMANN_ROCH = "RiemannRoch"


class BoundForm(Enum):
    LEMMA = "LemmaSumForm"
    SIMPLIFIED = "SimplifiedForm"


class BranchError(ValueError):
    """Degree handed to the wrong branch of the rank-1 bound."""


def _check_common(n: int, h_top: int, d) -> Fraction:
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if h_top < 1:
        raise ValueError(f"h_top must be >= 1, got {h_top}")
    d = Fraction(d)
    if d < 0:
        raise InconsistentInputError(
            f"degree must be >= 0 (degree-0 sheaves are trivial, negative is impossible), got {d}"
        )
    return d


def select_branch(g: int, d) -> Branch:
    return Branch.CLIFFORD if Fraction(d) <= 2 * g - 2 else Branch.RIEMANN_ROCH


def clifford_bound(n: int, h_top: int, g: int, d) -> Fraction:
    """Low-degree rank-1 bound: (h/2)*genbinom(d/h - 1, n) + genbinom(d/h, n-1).

    Valid for 0 <= d <= 2g-2; on a curve this is Clifford's theorem.
    """
    d = _check_common(n, h_top, d)
    if d > 2 * g - 2:
        raise BranchError(f"degree {d} exceeds 2g-2 = {2 * g - 2}; use the high branch")
    x = d / h_top
    return Fraction(h_top, 2) * genbinom(x - 1, n) + genbinom(x, n - 1)


def riemann_roch_bound(n: int, h_top: int, g: int, d) -> Fraction:
    """High-degree rank-1 bound in summed form.

    h*genbinom((d-(g-1))/h - 1, n)
      + sum_{i=0..n-2} ((n-i+g-1)/(n-i)) * genbinom((d-(2g-2))/h - 1, i)
                                         * genbinom((2g-2)/h, n-1-i)

    Valid for d >= 2g-1; the sum is empty on a curve.
    """
    d = _check_common(n, h_top, d)
    if d <= 2 * g - 2:
        raise BranchError(f"degree {d} is at most 2g-2 = {2 * g - 2}; use the low branch")
    total = h_top * genbinom((d - (g - 1)) / h_top - 1, n)
    s = (d - (2 * g - 2)) / h_top - 1
    t = Fraction(2 * g - 2, h_top)
    for i in range(n - 1):
        total += Fraction(n - i + g - 1, n - i) * genbinom(s, i) * genbinom(t, n - 1 - i)
    return total


def rank_one_bound(n: int, h_top: int, g: int, d) -> Fraction:
    if select_branch(g, d) is Branch.CLIFFORD:
        return clifford_bound(n, h_top, g, d)
    return riemann_roch_bound(n, h_top, g, d)


def bound_low(n: int, h_top: int, d) -> Fraction:
    """Simplified low-branch cap: (d/(2n) + 1)*genbinom(d/h, n-1) - 1."""
    d = _check_common(n, h_top, d)
    return (d / (2 * n) + 1) * genbinom(d / h_top, n - 1) - 1


def bound_high(n: int, h_top: int, g: int, d) -> Fraction:
    """Simplified high-branch cap.

    h*genbinom((d-(g-1))/h - 1, n) - 1
      + ((n-1)(n+g-1)/n) * genbinom((d-(2g-2))/h - 1, n-2) * genbinom((2g-2)/h, n-1)

    The cross term drops for n = 1 (zero factor), where the value
    collapses to d - g once d >= g - 1 + h.
    """
    d = _check_common(n, h_top, d)
    total = h_top * genbinom((d - (g - 1)) / h_top - 1, n) - 1
    if n >= 2:
        total += (
            Fraction((n - 1) * (n + g - 1), n)
            * genbinom((d - (2 * g - 2)) / h_top - 1, n - 2)
            * genbinom(Fraction(2 * g - 2, h_top), n - 1)
        )
    return total


@dataclass(frozen=True)
class BoundReport:
    branch: Branch
    form: BoundForm
    value: Fraction
    core: Fraction
    n: int
    h_top: int
    genus: int
    rank: int
    degree: int


def sections_bound(variety: Variety, rank: int, degree: int,
                   form: BoundForm = BoundForm.SIMPLIFIED) -> BoundReport:
    """Upper bound on h0 of a globally-generated torsion-free sheaf.

    Simplified form adds rank to the branch cap; lemma form adds rank-1
    to the summed rank-1 bound.  Either way the result is floored at
    rank: a globally-generated sheaf needs at least rank sections, and
    a degree-0 one is trivial with exactly that many.
    """
    if rank < 1:
        raise InconsistentInputError(f"rank must be >= 1, got {rank}")
    d = _check_common(variety.dim, variety.h_top, degree)
    n, h, g = variety.dim, variety.h_top, variety.genus
    branch = select_branch(g, d)
    if form is BoundForm.SIMPLIFIED:
        core = bound_low(n, h, d) if branch is Branch.CLIFFORD else bound_high(n, h, g, d)
        value = core + rank
    else:
        core = rank_one_bound(n, h, g, d)
        value = core + rank - 1
    return BoundReport(
        branch=branch, form=form, value=max(value, Fraction(rank)), core=core,
        n=n, h_top=h, genus=g, rank=rank, degree=int(d),
    )


def restriction_sum(n: int, h_top: int, g: int, d: int) -> Fraction:
    """One induction step, recomputed literally: restrict to a hyperplane
    section d//h + 1 times and add up the rank-1 bounds in dimension n-1.

    The closed forms are supposed to dominate this sum wherever the
    induction's own hypotheses hold.
    """
    if n < 2:
        raise ValueError("restriction needs dimension >= 2")
    d = _check_common(n, h_top, d)
    steps = math.floor(d / h_top)
    return sum(
        (rank_one_bound(n - 1, h_top, g, d - i * h_top) for i in range(steps + 1)),
        Fraction(0),
    )
