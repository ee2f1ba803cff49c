"""Exception taxonomy shared by all modules.

CLI exit codes: UsageError/DomainError/ValidationError -> 1,
ResourceBudgetError -> 2, AnomalyError -> 3.
"""


class FloergenError(Exception):
    pass


class UsageError(FloergenError):
    """API misuse: ring mismatch, missing unit, wrong field, bad flag."""


class DomainError(FloergenError):
    """Input outside an operation's mathematical domain."""


class ValidationError(FloergenError):
    """Polytope validation failure; names the offending facets/vertex."""

    def __init__(self, check, message, facets=None, vertex=None):
        super().__init__(message)
        self.check = check
        self.facets = facets
        self.vertex = vertex


class NotMonotoneError(FloergenError):
    """No translation equalizes the support constants."""


class ResourceBudgetError(FloergenError):
    """Step budget exhausted; carries partial diagnostics."""

    def __init__(self, message, steps=None, basis_size=None):
        super().__init__(message)
        self.steps = steps
        self.basis_size = basis_size


class AnomalyError(FloergenError):
    """A theorem-level invariant failed on in-contract input (likely a bug)."""
