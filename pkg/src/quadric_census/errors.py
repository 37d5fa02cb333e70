class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NumericError(RuntimeError):
    """A numerical procedure failed to reach its target accuracy."""
