"""
Common Module
Centralized settings, error types and logging setup for the project
"""

from .settings import (
    SCHEMA_VERSION,
    DEFAULT_THREADS,
    DEFAULT_SOLVER,
    LOG_LEVEL,
    TIMEZONE,
)
from .errors import (
    SpikePcaError,
    NonFinite,
    NoConvergence,
    DimensionMismatch,
    SpecTooLarge,
    NotMonotone,
    ZeroDivisionRatio,
    NotUnit,
    EmptyIndexSet,
    DomainError,
    MissingScores,
    BoundaryCase,
    UnsupportedSpec,
    InsufficientPoints,
    NonPositiveResponse,
    ParseError,
    ValidationError,
    IoError,
    TrialError,
    WielandtViolation,
)
from .log import configure_logging, log_banner

__all__ = [
    'SCHEMA_VERSION',
    'DEFAULT_THREADS',
    'DEFAULT_SOLVER',
    'LOG_LEVEL',
    'TIMEZONE',
    'SpikePcaError',
    'NonFinite',
    'NoConvergence',
    'DimensionMismatch',
    'SpecTooLarge',
    'NotMonotone',
    'ZeroDivisionRatio',
    'NotUnit',
    'EmptyIndexSet',
    'DomainError',
    'MissingScores',
    'BoundaryCase',
    'UnsupportedSpec',
    'InsufficientPoints',
    'NonPositiveResponse',
    'ParseError',
    'ValidationError',
    'IoError',
    'TrialError',
    'WielandtViolation',
    'configure_logging',
    'log_banner',
]
