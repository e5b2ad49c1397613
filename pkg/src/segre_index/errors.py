"""
Exception hierarchy shared by the library and the command line.

Every error carries the process exit code the CLI uses when it surfaces:
2 for usage, schema and precondition problems, 3 for degenerate input.
"""


class SegreIndexError(ValueError):
    """Base class for all errors raised by segre_index."""

    exit_code = 2


class SchemaError(SegreIndexError):
    """Input data does not follow the expected shape or value ranges."""


class FieldMismatchError(SegreIndexError):
    """Two values from different fields were combined."""


class UnsupportedFieldError(SegreIndexError):
    """The requested operation is not implemented for this kind of field."""


class ZeroElementError(SegreIndexError):
    """An operation requiring a nonzero element received zero."""


class FactorizationBudgetError(SegreIndexError):
    """An integer is too large to factor within the configured budget."""


class InexactDivisionError(SegreIndexError):
    """A polynomial division that should be exact left a remainder."""


class LineNotOnHypersurfaceError(SegreIndexError):
    """The hypersurface does not vanish identically on the given line."""


class DegenerateInputError(SegreIndexError):
    """Input is well formed but sits on a degeneracy locus."""

    exit_code = 3


class DegenerateLineError(DegenerateInputError):
    """The line is not a simple zero: the index matrix is singular."""


class NonGenericCurveError(DegenerateInputError):
    """The Gauss curve does not have three distinct ordinary nodes."""
