"""
Dual-Matrix Path
Sample eigenstructure of n^-1 X X^T computed through the n x n dual n^-1 X^T X
"""

import logging
from typing import Optional, Tuple

import numpy as np

from common.errors import DimensionMismatch, NonFinite
from common.settings import DUAL_RANK_CUT, DUAL_PATH_RATIO
from .symmetric import EigenPath, EigenResult, SymMatrix, fix_signs, sample_cov, sym_eigen

logger = logging.getLogger(__name__)


def _check_data(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or min(x.shape) < 1:
        raise DimensionMismatch(f"expected a non-empty d x n matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFinite("data matrix has NaN or Inf entries")
    return x


def dual_eigen(x: np.ndarray, solver: Optional[str] = None) -> EigenResult:
    """
    Leading min(n, d) eigenpairs of the sample covariance via the dual matrix

    Sample eigenvectors are rebuilt as u_j = X v_j / sqrt(n * lambda_j).
    Values at or below DUAL_RANK_CUT * lambda_1 are reported as 0 and get no vector.

    Args:
        x: d x n data matrix
        solver: Eigensolver name passed to sym_eigen

    Returns:
        EigenResult on the Dual path; `rank` columns in `vectors`
    """
    x = _check_data(x)
    d, n = x.shape
    k = min(n, d)
    dual = sym_eigen(SymMatrix(x.T @ x / n), solver=solver)

    values = dual.values[:k].copy()
    top = values[0] if k else 0.0
    if top <= 0.0:
        rank = 0
    else:
        rank = int(np.count_nonzero(values > DUAL_RANK_CUT * top))
    values[rank:] = 0.0

    v = dual.vectors[:, :rank]
    vectors = (x @ v) / np.sqrt(n * values[:rank])
    return EigenResult(values=values, vectors=fix_signs(vectors), path=EigenPath.DUAL)


def choose_path(d: int, n: int) -> EigenPath:
    """Dual path when n < d / DUAL_PATH_RATIO"""
    return EigenPath.DUAL if n * DUAL_PATH_RATIO < d else EigenPath.DIRECT


def decompose(x: np.ndarray, path: Optional[EigenPath] = None, solver: Optional[str] = None) -> EigenResult:
    """Sample eigenstructure of a d x n data matrix along the chosen (or auto-selected) path"""
    x = _check_data(x)
    path = path or choose_path(*x.shape)
    if path is EigenPath.DUAL:
        return dual_eigen(x, solver=solver)
    return sym_eigen(sample_cov(x), solver=solver)


def dual_split(scores: np.ndarray, spectrum: np.ndarray, spike_count: int) -> Tuple[SymMatrix, SymMatrix]:
    """
    Split the dual matrix into its spike part A and noise part B

    A = n^-1 sum_{j<=m} lambda_j Z_j Z_j^T and B = n^-1 sum_{j>m} lambda_j Z_j Z_j^T,
    where Z_j is row j of the d x n score matrix.
    """
    scores = _check_data(scores)
    spectrum = np.asarray(spectrum, dtype=float)
    d, n = scores.shape
    if spectrum.shape != (d,):
        raise DimensionMismatch(f"spectrum length {spectrum.shape} does not match d={d}")
    if not 0 <= spike_count <= d:
        raise DimensionMismatch(f"spike count {spike_count} outside [0, {d}]")

    head, tail = scores[:spike_count], scores[spike_count:]
    a = head.T @ (spectrum[:spike_count, None] * head) / n
    b = tail.T @ (spectrum[spike_count:, None] * tail) / n
    return SymMatrix(a), SymMatrix(b)
