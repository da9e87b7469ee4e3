"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input violates a mathematical precondition (bad vertex, value out of range, ...)."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured size limit."""
