"""Shared exception and warning types."""


class ValidityError(ValueError):
    """A digit word (or word-derived input) violates the digit constraints.

    `index` is the 1-based position of the first offending digit when the
    failure is attributable to one; otherwise None.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DomainError(ValueError):
    """A numeric argument lies outside the operation's domain."""


class CapTooSmallWarning(UserWarning):
    """A digit cap excludes every admissible digit at some position."""
