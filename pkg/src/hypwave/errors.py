"""Error types shared across the package.

The CLI maps these onto exit codes: ParameterError and its subclasses
exit with 2, file/format problems with 3, admissibility gating with 4.
"""


class ParameterError(ValueError):
    """An argument violates a documented precondition."""


class BandRangeError(ParameterError):
    """A band index exceeds the anti-aliasing cap of the grid."""


class DegenerateInputError(ParameterError):
    """Input carries no usable signal (e.g. an all-zero field)."""


class InsufficientDataError(ParameterError):
    """Too few data points to run the requested estimation."""


class SupportViolationError(ParameterError):
    """A field's spectrum extends beyond the region an operation requires."""


class FileFormatError(Exception):
    """A container file failed to parse; ``code`` names the specific defect."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class AdmissibilityError(Exception):
    """Raised by strict-mode CLI gating when a parameter range check fails."""


class TruncationWarning(UserWarning):
    """A norm computation discarded spectral mass above the usable box."""
