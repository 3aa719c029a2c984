"""Exception types shared across the package."""


class PolarityError(Exception):
    """Base class for errors raised by textpolarity."""


class FormatError(PolarityError, ValueError):
    """Malformed or truncated image file.

    ``offset`` is the byte position in the file where parsing failed.
    """

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnsupportedFormatError(FormatError):
    """File is well formed but uses a feature we do not handle."""


class EmptyHistogramError(PolarityError, ValueError):
    """Histogram with no counts at all."""


class DegenerateHistogramError(PolarityError, ValueError):
    """All mass sits in one gray level, so no threshold separates two classes."""


class DomainError(PolarityError, ValueError):
    """Argument outside the domain an operation accepts."""
