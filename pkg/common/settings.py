"""
Centralized Settings
Numerical tolerances, defaults and environment overrides shared by every package
"""

import os

# Eigensolvers
JACOBI_TOL = 1e-12          # off-diagonal Frobenius norm relative to ||M||_F
JACOBI_MAX_SWEEPS = 64
DUAL_RANK_CUT = 1e-12       # dual eigenvalues <= cut * top value count as zero
DUAL_PATH_RATIO = 4         # dual path when n < d / DUAL_PATH_RATIO
SOLVERS = ('lapack', 'jacobi')

# Invariant checks
WIELANDT_SLACK = 1e-10
UNIT_TOL = 1e-8
EXPONENT_TOL = 1e-12        # exponents closer than this to 0 are a boundary

# Rate fitting
LOG_FIT_FLOOR = 1e-14
MIN_FIT_POINTS = 3

# Output
SCHEMA_VERSION = "1"
FLOAT_DIGITS = 17
RAW_RESULTS_NAME = "results"
AGGREGATE_RESULTS_NAME = "aggregates"
LOG_FILE_NAME = "run.log"

# Experiment defaults
DEFAULT_DIST = "gaussian"
DEFAULT_BASIS = "identity"
DEFAULT_REPLICATES = 10
DEFAULT_MEASURES = ("eigen_ratio", "abs_inner", "inner_sq", "subspace_cos")
ALL_MEASURES = DEFAULT_MEASURES + ("timing",)
WIELANDT_SPOT_FRACTION = 0.05
WIELANDT_SPOT_MAX_D = 200


def _env_int(name: str, default: int) -> int:
    """Read a positive integer from the environment, falling back to default"""
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default


# Environment overrides
DEFAULT_THREADS = _env_int('SPIKE_PCA_THREADS', 1)
DEFAULT_SOLVER = os.getenv('SPIKE_PCA_SOLVER', 'lapack')
if DEFAULT_SOLVER not in SOLVERS:
    DEFAULT_SOLVER = 'lapack'
LOG_LEVEL = os.getenv('SPIKE_PCA_LOG_LEVEL', 'INFO')
TIMEZONE = os.getenv('SPIKE_PCA_TZ', 'UTC')
