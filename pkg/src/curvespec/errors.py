"""Exception hierarchy shared by all modules."""


class CurveSpecError(Exception):
    """Base class for every error raised by this package."""


class InvalidPairsError(CurveSpecError, ValueError):
    """Input pairs (or their textual form) violate the validity rules.

    ``index`` is the 1-based position of the offending pair, or ``None``
    when the problem is not tied to a single pair.
    """

    def __init__(self, message, index=None):
        if index is not None:
            message = f"pair {index}: {message}"
        super().__init__(message)
        self.index = index


class ResourceLimitError(CurveSpecError):
    """Input would produce a resolution larger than the configured guard."""


class InvariantError(CurveSpecError):
    """An internal identity failed. Signals a bug or corrupted data."""
