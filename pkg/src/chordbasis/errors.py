"""Exception types shared across the package."""


class ChordBasisError(Exception):
    """Base class for all errors raised by this package."""


class DiagramError(ChordBasisError, ValueError):
    """Malformed diagram text or an invalid string representation."""


class BudgetExceededError(ChordBasisError, RuntimeError):
    """A resource budget (candidates, matrix cells, or wall time) was hit.

    Raised instead of returning a possibly-wrong answer; the CLI maps it
    to its own exit code.
    """
