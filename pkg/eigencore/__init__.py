"""
Eigencore Module
Dense symmetric eigendecomposition, the dual-matrix path and spectral inequality checks
"""

from .symmetric import (
    SymMatrix,
    EigenPath,
    EigenResult,
    sym_eigen,
    sample_cov,
    reconstruction_residual,
    orthonormality_error,
)
from .dual import dual_eigen, dual_split, choose_path, decompose
from .inequalities import WielandtBounds, wielandt_check, wielandt_check_all

__all__ = [
    'SymMatrix',
    'EigenPath',
    'EigenResult',
    'sym_eigen',
    'sample_cov',
    'reconstruction_residual',
    'orthonormality_error',
    'dual_eigen',
    'dual_split',
    'choose_path',
    'decompose',
    'WielandtBounds',
    'wielandt_check',
    'wielandt_check_all',
]
