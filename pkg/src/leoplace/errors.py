"""Shared exception types."""


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class NoSuchLink(ValueError):
    """The requested ISL does not exist (single plane or single satellite)."""


class CapacityError(RuntimeError):
    """The instance is too large for an exhaustive method."""
