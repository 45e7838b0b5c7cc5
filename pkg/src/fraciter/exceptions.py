"""Exception hierarchy.

Usage errors are programming/configuration mistakes; everything else is a
numerical or domain failure that a caller may want to catch per point.
"""

from __future__ import annotations


class FracIterError(Exception):
    """Base class for all errors raised by :mod:`fraciter`."""


class UsageError(FracIterError, ValueError):
    """Invalid arguments: order/type mismatch, wrong mode, bad config."""


class DegenerateError(FracIterError, ArithmeticError):
    """A quantity that must be nonzero vanished (c1 = 0, identity map, R = 0)."""


class ResonanceError(DegenerateError):
    """Linear-solve pivot too small relative to its operands."""


class NumericRangeError(FracIterError, ArithmeticError):
    """A float evaluation produced a non-finite value."""


class DomainError(FracIterError, ValueError):
    """A value left the domain of an evaluator.

    Attributes
    ----------
    value : float
        The offending input.
    stage : int or None
        Index of the composition stage at which the escape happened.
    """

    def __init__(self, message, value=None, stage=None):
        super().__init__(message)
        self.value = value
        self.stage = stage


class PoleError(DomainError):
    """Evaluation hit a pole of a rational map or flow."""
