"""
Error Types
Exception hierarchy for numerical, validation and I/O failures
"""

from typing import Any, Dict, Optional


class SpikePcaError(Exception):
    """Base class. `category` picks the CLI exit code."""

    category = "numerical"


class ValidationFailure(SpikePcaError):
    category = "validation"


class NonFinite(SpikePcaError):
    """Input contains NaN or Inf"""


class NoConvergence(SpikePcaError):
    """Eigensolver exhausted its iteration budget"""


class DimensionMismatch(ValidationFailure):
    pass


class SpecTooLarge(ValidationFailure):
    """Spike count plus zero tail does not fit in the dimension"""


class NotMonotone(ValidationFailure):
    pass


class ZeroDivisionRatio(SpikePcaError):
    """A ratio denominator (population eigenvalue or tier value) is zero"""


class NotUnit(ValidationFailure):
    pass


class EmptyIndexSet(ValidationFailure):
    pass


class DomainError(ValidationFailure):
    pass


class MissingScores(ValidationFailure):
    pass


class BoundaryCase(SpikePcaError):
    """Configuration sits on a clause boundary, where no rate is asserted"""


class UnsupportedSpec(ValidationFailure):
    pass


class InsufficientPoints(SpikePcaError):
    pass


class NonPositiveResponse(SpikePcaError):
    pass


class ParseError(ValidationFailure):
    """Config text is not valid JSON"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class ValidationError(ValidationFailure):
    """Config is well-formed but a key is missing, unknown or invalid"""

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(f"{key}: {message}")


class IoError(SpikePcaError):
    category = "io"


class WielandtViolation(SpikePcaError):
    """Sample eigenvalues fell outside the Wielandt bounds of the spike/noise split"""


class TrialError(SpikePcaError):
    """Numerical failure inside one trial, annotated with its coordinates"""

    def __init__(self, coords: Dict[str, Any], cause: Exception):
        self.coords = dict(coords)
        self.cause = cause
        where = ", ".join(f"{k}={v}" for k, v in self.coords.items())
        super().__init__(f"trial [{where}] failed: {type(cause).__name__}: {cause}")
