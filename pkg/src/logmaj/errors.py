"""Exception hierarchy.

Every precondition failure derives from :class:`PreconditionFailed`, whose
``predicate`` attribute names the violated condition (``"NotPSD"`` etc.).
"""

from __future__ import annotations


class LogMajError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionFailed(LogMajError, ValueError):
    predicate = "PreconditionFailed"

    def __init__(self, message: str = ""):
        super().__init__(f"{self.predicate}: {message}" if message else self.predicate)


class NotHermitian(PreconditionFailed):
    predicate = "NotHermitian"


class DimensionTooLarge(PreconditionFailed):
    predicate = "DimensionTooLarge"


class DimensionMismatch(PreconditionFailed):
    predicate = "DimensionMismatch"


class SingularSystem(PreconditionFailed):
    predicate = "SingularSystem"


class IndexOutOfRange(PreconditionFailed, IndexError):
    predicate = "IndexOutOfRange"


class BadIndices(PreconditionFailed):
    predicate = "BadIndices"


class NotPSD(PreconditionFailed):
    predicate = "NotPSD"


class NotPartialIsometry(PreconditionFailed):
    predicate = "NotPartialIsometry"


class ZeroPatternViolated(PreconditionFailed):
    predicate = "ZeroPatternViolated"


class FrameNotNested(PreconditionFailed):
    predicate = "FrameNotNested"


class NotOrthonormal(PreconditionFailed):
    predicate = "NotOrthonormal"


class NotContraction(PreconditionFailed):
    predicate = "NotContraction"


class NotStrictContraction(NotContraction):
    predicate = "NotStrictContraction"


class NegativeInput(PreconditionFailed):
    predicate = "NegativeInput"


class LengthMismatch(PreconditionFailed):
    predicate = "LengthMismatch"


class BadSpectrum(PreconditionFailed):
    predicate = "BadSpectrum"


class InfeasiblePattern(PreconditionFailed):
    predicate = "InfeasiblePattern"


class DegenerateDraw(LogMajError):
    """Random construction failed repeatedly (numerically dependent draws)."""


class ConvergenceError(LogMajError, ArithmeticError):
    """An iterative kernel hit its iteration cap."""


class ParseError(LogMajError, ValueError):
    """A matrix or config document is malformed."""


class ConfigError(LogMajError, ValueError):
    """A campaign configuration violates its invariants."""


class UnknownCheck(ConfigError, KeyError):
    """A check name is not in the registry."""

    def __str__(self) -> str:
        return Exception.__str__(self)
