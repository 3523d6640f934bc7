"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input lies outside the domain where a formula is defined."""


class TruncationError(PreconditionError):
    """A requested coefficient lies beyond the series truncation order."""
