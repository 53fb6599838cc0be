class InputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class InconsistencyError(ArithmeticError):
    """Raised when redundant expressions for the same quantity disagree."""
