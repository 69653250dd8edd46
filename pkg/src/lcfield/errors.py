"""Exception types shared across the package."""

from __future__ import annotations


class LCError(Exception):
    """Base class for all library errors."""


class InsufficientHorizon(LCError, ArithmeticError):
    """A needed coefficient lies at or beyond a number's exactness horizon."""


class IndeterminateOrder(LCError):
    """An order comparison could not be decided from the known coefficients."""


class DomainError(LCError, ValueError):
    """Argument outside the domain of an operation."""


class NonPositive(DomainError):
    pass


class NotInWeakConvergenceRegion(DomainError):
    pass


class NonInfinitesimalOffset(DomainError):
    pass


class NotInfinitesimal(DomainError):
    pass


class InsufficientSmoothness(DomainError):
    pass


class SignUndecidable(LCError):
    """Root isolation could not certify the sign pattern of a piece."""


class NoInfimum(LCError):
    """The essential supremum does not exist in the field."""


class NotStronglyCauchy(LCError):
    pass


class UnboundVariable(LCError, NameError):
    pass


class LCSyntaxError(LCError, ValueError):
    """Parse failure with a byte offset and the set of tokens that would fit."""

    def __init__(self, message: str, source: str, offset: int, expected=()):
        self.message = message
        self.source = source
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        before = source[:offset]
        self.line = before.count("\n") + 1
        self.col = offset - (before.rfind("\n") + 1) + 1
        super().__init__(str(self))

    def __str__(self) -> str:
        text = f"{self.line}:{self.col}: {self.message}"
        if self.expected:
            text += " (expected " + ", ".join(self.expected) + ")"
        return text


class VerificationError(LCError, ArithmeticError):
    """A computed inverse or root failed its round-trip check."""
