"""Exception types shared across the package."""

from __future__ import annotations


class HyperspecError(Exception):
    """Base class for every error raised by hyperspec."""


class ContractError(HyperspecError, ValueError):
    """An operation was called outside its documented preconditions."""


class ValidationError(ContractError):
    """A hypergraph failed structural validation.

    The individual violation messages are kept in ``violations``.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid hypergraph")


class MultiEdgeError(ContractError):
    """An edge operation would have produced two equal edges."""


class BudgetError(HyperspecError, RuntimeError):
    """A search or iteration ran past its budget.

    ``bracket`` holds the last ``(lower, upper)`` enclosure when the failing
    routine had one.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class ParseError(HyperspecError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class IdentityMoveWarning(UserWarning):
    """An edge move left the hypergraph unchanged up to isomorphism."""
