"""Polarized-variety and sheaf data, plus the built-in example catalog.

A Variety records the dimension n, the top self-intersection number of
the polarizing divisor, and the intersection number of the anticanonical
class with its (n-1)-st power.  The sectional genus is always derived
from those three by adjunction, never accepted from the user, so an
inconsistent quadruple cannot be constructed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .errors import InconsistentInputError, InvalidVarietyError, UnknownVarietyError, UsageError
from .exactnum import parse_rational


@dataclass(frozen=True)
class Variety:
    name: str
    dim: int
    h_top: int
    c1_dot_h: int
    genus: int


def derive_genus(dim: int, h_top: int, c1_dot_h: int) -> int:
    """Sectional genus by adjunction: g = 1 + ((dim-1)*h_top - c1_dot_h)/2.

    The curve in question is cut out by dim-1 general members of the
    polarizing system, so its genus must be a nonnegative integer; parity
    and sign violations mean the input numbers describe nothing.
    """
    if dim < 1:
        raise InvalidVarietyError(f"dim must be >= 1, got {dim}")
    if h_top < 1:
        raise InvalidVarietyError(f"h_top must be >= 1, got {h_top}")
    twice = (dim - 1) * h_top - c1_dot_h
    if twice % 2 != 0:
        raise InvalidVarietyError(
            f"genus integrality fails: (dim-1)*h_top - c1_dot_h = {twice} is odd"
        )
    g = 1 + twice // 2
    if g < 0:
        raise InvalidVarietyError(f"derived genus is negative: {g}")
    return g


def make_variety(name: str, dim: int, h_top: int, c1_dot_h: int) -> Variety:
    return Variety(name, dim, h_top, c1_dot_h, derive_genus(dim, h_top, c1_dot_h))


@lru_cache(maxsize=1)
def _catalog() -> dict[str, Variety]:
    raw = resources.files("syzstab.data").joinpath("catalog.json").read_text()
    data = json.loads(raw)
    entries = {}
    for row in data["entries"]:
        entries[row["name"]] = make_variety(
            row["name"], row["dim"], row["h_top"], row["c1_dot_h"]
        )
    return entries


def catalog_names() -> list[str]:
    return sorted(_catalog())


def catalog_entries() -> list[Variety]:
    return [_catalog()[name] for name in catalog_names()]


def catalog_lookup(name: str) -> Variety:
    try:
        return _catalog()[name]
    except KeyError:
        raise UnknownVarietyError(
            f"unknown variety {name!r}; available: {', '.join(catalog_names())}"
        ) from None


@dataclass(frozen=True)
class SheafSpec:
    """Rank and degree of the sheaf, with optional section data.

    Section data comes in two flavors: a directly known h0, or a Hilbert
    polynomial (coefficients, constant first) together with the twist
    threshold from which the polynomial counts sections.
    """

    rank: int
    degree: int
    sections: int | None = None
    hilbert: tuple[Fraction, ...] | None = None
    regularity: int | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise InconsistentInputError(f"rank must be >= 1, got {self.rank}")
        if self.sections is not None and self.sections < 0:
            raise InconsistentInputError(f"h0 must be >= 0, got {self.sections}")
        if (self.hilbert is None) != (self.regularity is None):
            raise UsageError("hilbert coefficients and regularity must be given together")


def parse_problem(data: dict) -> tuple[Variety, SheafSpec]:
    """Decode the input-file schema: {"variety": {...}, "sheaf": {...}}.

    A variety block naming a catalog entry may omit the numeric fields;
    if it supplies them too they must agree with the catalog.
    """
    if not isinstance(data, dict):
        raise UsageError("input must be a JSON object")
    try:
        vblock = data["variety"]
        sblock = data["sheaf"]
    except (KeyError, TypeError):
        raise UsageError('input must contain "variety" and "sheaf" objects') from None

    name = vblock.get("name")
    numeric = {k: vblock[k] for k in ("dim", "h_top", "c1_dot_h") if k in vblock}
    if name is not None and not numeric:
        variety = catalog_lookup(name)
    elif len(numeric) == 3:
        variety = make_variety(name or "custom", numeric["dim"], numeric["h_top"], numeric["c1_dot_h"])
        if name is not None and name in catalog_names():
            stock = catalog_lookup(name)
            if (stock.dim, stock.h_top, stock.c1_dot_h) != (variety.dim, variety.h_top, variety.c1_dot_h):
                raise InconsistentInputError(
                    f"variety block for {name!r} disagrees with the catalog entry"
                )
    else:
        raise UsageError('variety block needs "name" or all of "dim", "h_top", "c1_dot_h"')

    try:
        rank = int(sblock["rank"])
        degree = int(sblock["degree"])
    except (KeyError, TypeError, ValueError):
        raise UsageError('sheaf block needs integer "rank" and "degree"') from None
    hilbert = None
    if "hilbert" in sblock:
        hilbert = tuple(parse_rational(str(c)) for c in sblock["hilbert"])
    regularity = sblock.get("regularity")
    if regularity is not None:
        regularity = int(regularity)
    sections = sblock.get("h0")
    if sections is not None:
        sections = int(sections)
    spec = SheafSpec(rank, degree, sections=sections, hilbert=hilbert, regularity=regularity)
    return variety, spec
