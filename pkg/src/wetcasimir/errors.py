"""Exception types raised by wetcasimir."""


class WetCasimirError(Exception):
    """Base class for all library errors."""


class DomainError(WetCasimirError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(WetCasimirError, RuntimeError):
    """A quadrature exhausted its node budget before reaching tolerance."""


class UnknownRowError(WetCasimirError, LookupError):
    """Requested Drude row is not in the built-in table."""


class MaterialFileError(WetCasimirError, ValueError):
    """A material file could not be parsed or failed validation.

    ``line`` is the 1-based line number when the error is tied to one line,
    ``field`` the offending key when it is a range check.
    """

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SeparationError(WetCasimirError):
    """A force-curve point failed; wraps the underlying error."""

    def __init__(self, separation, cause):
        self.separation = separation
        self.cause = cause
        super().__init__(f"separation {separation:g} nm: {cause}")
