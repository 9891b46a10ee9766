"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes, so raising the right class matters:
UsageError means the caller asked for something malformed, while
InconsistentInputError means the request was well formed but the numbers
cannot describe a real geometric situation.
"""


class UsageError(Exception):
    """Malformed request: bad flags, bad schema, unknown subcommand."""


class InconsistentInputError(Exception):
    """Well-formed input whose values are mathematically contradictory."""


class InvalidVarietyError(InconsistentInputError):
    """Variety data violates an invariant (parity, positivity, genus)."""


class UnknownVarietyError(UsageError):
    """Catalog lookup for a name that is not shipped."""
