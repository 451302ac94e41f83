class DomainError(ValueError):
    """An argument violates an operation's stated precondition."""


class ConsistencyError(RuntimeError):
    """Two computations that must agree exactly disagreed (internal bug trap)."""


class ExprSyntaxError(ValueError):
    """Raised by the expression parser; carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class CacheError(RuntimeError):
    """A cache file is missing, corrupted, or has an unsupported format."""
