"""
Spectral Inequalities
Wielandt's two-sided bounds on the eigenvalues of a sum of symmetric matrices
"""

from typing import List, NamedTuple, Optional

import numpy as np

from common.errors import DimensionMismatch
from common.settings import WIELANDT_SLACK
from .symmetric import SymMatrix, sym_eigen


class WielandtBounds(NamedTuple):
    lower: float
    upper: float
    holds: bool
    value: float


def _bounds(va: np.ndarray, vb: np.ndarray, vsum: np.ndarray, j: int) -> WielandtBounds:
    p = len(va)
    lower = max(va[j + k - 1] + vb[p - k - 1] for k in range(p - j + 1))
    upper = min(va[j - k - 1] + vb[k] for k in range(j))
    value = float(vsum[j - 1])
    holds = lower - WIELANDT_SLACK <= value <= upper + WIELANDT_SLACK
    return WielandtBounds(float(lower), float(upper), bool(holds), value)


def wielandt_check(a: SymMatrix, b: SymMatrix, j: int, solver: Optional[str] = None) -> WielandtBounds:
    """
    Check lambda_j(A + B) against Wielandt's bounds

    Args:
        a, b: Symmetric matrices of the same order p
        j: 1-based eigenvalue index

    Returns:
        WielandtBounds(lower, upper, holds, value)
    """
    if a.order != b.order:
        raise DimensionMismatch(f"orders differ: {a.order} vs {b.order}")
    if not 1 <= j <= a.order:
        raise DimensionMismatch(f"index {j} outside 1..{a.order}")
    va = sym_eigen(a, solver=solver).values
    vb = sym_eigen(b, solver=solver).values
    vsum = sym_eigen(a + b, solver=solver).values
    return _bounds(va, vb, vsum, j)


def wielandt_check_all(a: SymMatrix, b: SymMatrix, solver: Optional[str] = None) -> List[WielandtBounds]:
    """Bounds for every j = 1..p, sharing one decomposition of each matrix"""
    if a.order != b.order:
        raise DimensionMismatch(f"orders differ: {a.order} vs {b.order}")
    va = sym_eigen(a, solver=solver).values
    vb = sym_eigen(b, solver=solver).values
    vsum = sym_eigen(a + b, solver=solver).values
    return [_bounds(va, vb, vsum, j) for j in range(1, a.order + 1)]
