"""Shared exception types."""


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class NotApplicableError(ValueError):
    """A theorem hypothesis fails at the given parameters.

    Carries the offending right-hand side of the defining equation so
    callers can report which parameter pair broke the chain.
    """

    def __init__(self, message: str, rhs: float | None = None):
        super().__init__(message)
        self.rhs = rhs


class QuadratureError(RuntimeError):
    """Adaptive integration failed to converge within the depth limit."""
