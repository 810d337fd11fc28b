class GuardError(ValueError):
    """An instance exceeds a hard size limit."""


class NotAComplexError(ValueError):
    """A boundary map does not square to zero."""


class MatchingError(RuntimeError):
    """A matching is invalid: bad pair, label mismatch, or a cycle."""

    def __init__(self, message, cycle=None):
        super().__init__(message)
        self.cycle = cycle
