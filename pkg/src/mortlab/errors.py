"""Shared exception types."""


class DomainError(ValueError):
    """Raised when an input violates a documented precondition.

    Examples: negative rate, non-positive notional, out-of-range month,
    an explosive mean-reversion step (kappa * delta > 1).
    """
