class SpreadError(Exception):
    """Base class for all hkspread errors."""


class RingError(SpreadError):
    """Used to indicate an invalid ring, polynomial or Frobenius exponent."""


class ResourceError(SpreadError):
    """Used to indicate that a configured resource guard was exceeded."""


class IdealError(SpreadError):
    """Used to indicate an error occurred during an ideal operation."""


class LengthError(SpreadError):
    """Used to indicate an error occurred during a length computation."""


class EstimateError(SpreadError):
    """Used to indicate an error occurred during Hilbert-Kunz estimation."""


class PreconditionError(SpreadError):
    """Used to indicate that an identity check or diagnostic precondition failed."""


class ParseError(SpreadError):
    """Used to indicate an error in a session script, with its position."""

    def __init__(self, message, line=0, column=0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
