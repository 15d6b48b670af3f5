"""Exception hierarchy shared by every keplor module.

All package errors derive from :class:`KeplorError`, so callers can catch one
type at the boundary.  Domain violations additionally subclass the matching
builtin (``ValueError``, ``ArithmeticError``, ``RuntimeError``) so that code
written against the builtins keeps working.
"""

from __future__ import annotations

__all__ = [
    "KeplorError",
    "DomainError",
    "NoSignChange",
    "NonFinite",
    "NoConvergence",
    "ZeroCell",
    "ZeroMargin",
    "InconsistentParams",
    "OrderTooLarge",
]


class KeplorError(Exception):
    """Base class for all keplor errors."""


class DomainError(KeplorError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NoSignChange(DomainError):
    """A root bracket does not enclose a sign change of the target function."""


class NonFinite(KeplorError, ArithmeticError):
    """A numerical evaluation produced NaN or an infinity."""


class NoConvergence(KeplorError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class ZeroCell(DomainError):
    """A table cell is zero where a positive count is required."""


class ZeroMargin(DomainError):
    """A table row (cases or controls) contains no observations."""


class InconsistentParams(DomainError):
    """Derived quantities fell outside their valid range."""


class OrderTooLarge(DomainError):
    """A requested series truncation order exceeds the supported cap."""
