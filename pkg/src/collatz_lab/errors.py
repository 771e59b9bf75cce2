"""Exception types shared across the package."""

from __future__ import annotations


class CollatzLabError(Exception):
    """Base class for all package-specific errors."""


class OrderTooLarge(CollatzLabError):
    """A dimensional order exceeds the configured cap (memory guard)."""

    def __init__(self, order: int, cap: int, what: str = "order"):
        self.order = order
        self.cap = cap
        super().__init__(f"{what} {order} exceeds cap {cap}")


class IndexTooLarge(CollatzLabError):
    """A series index exceeds the configured cap."""

    def __init__(self, index: int, cap: int):
        self.index = index
        self.cap = cap
        super().__init__(f"series index {index} exceeds cap {cap}")


class NotNested(CollatzLabError):
    """A family of parity vectors violates the required nesting."""


class InsufficientEvidence(CollatzLabError):
    """Too few data points to apply the finite-evidence trend rules."""


class DegenerateOrder(CollatzLabError):
    """The requested order makes the statistic undefined."""


class EmptyCategoryViolation(CollatzLabError):
    """A label landed in a category proven impossible for realizable sequences.

    Raised on construction of such a label.  If this ever fires for a
    verdict of grade Definite, it is a falsification signal and must be
    surfaced, never swallowed.
    """
