"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition or invariant."""


class SizeLimitError(RuntimeError):
    """Raised when a request exceeds a built-in cost or memory guard."""
