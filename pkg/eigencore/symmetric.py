"""
Symmetric Eigensolvers
LAPACK (numpy.linalg.eigh) and cyclic Jacobi decompositions with a fixed sign convention
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

import numpy as np

from common.errors import NonFinite, NoConvergence, DimensionMismatch
from common.settings import JACOBI_TOL, JACOBI_MAX_SWEEPS, SOLVERS, DEFAULT_SOLVER

logger = logging.getLogger(__name__)

# below this |a_pq| / |a_qq - a_pp| the rotation angle is taken to first order
ROTATION_EPS = 1e-18


class EigenPath(Enum):
    DIRECT = "Direct"
    DUAL = "Dual"


@dataclass(frozen=True)
class SymMatrix:
    """Square real matrix, symmetrized as (M + M^T) / 2 on construction"""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NonFinite("matrix has NaN or Inf entries")
        object.__setattr__(self, 'entries', (m + m.T) / 2.0)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __add__(self, other: 'SymMatrix') -> 'SymMatrix':
        if self.order != other.order:
            raise DimensionMismatch(f"orders differ: {self.order} vs {other.order}")
        return SymMatrix(self.entries + other.entries)


@dataclass(frozen=True)
class EigenResult:
    """
    Descending eigenvalues and orthonormal eigenvectors

    `vectors` holds one column per value on the direct path. On the dual path
    only the leading `rank` values carry a column; the rest are reported as 0.
    """

    values: np.ndarray
    vectors: np.ndarray
    path: EigenPath = EigenPath.DIRECT

    @property
    def order(self) -> int:
        return len(self.values)

    @property
    def rank(self) -> int:
        return self.vectors.shape[1]

    def nonzero_values(self) -> np.ndarray:
        return self.values[:self.rank]


def _as_sym(m: Union[SymMatrix, np.ndarray]) -> SymMatrix:
    return m if isinstance(m, SymMatrix) else SymMatrix(np.asarray(m, dtype=float))


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """
    Flip each column so its largest-magnitude component is positive

    Ties (within 1e-12 of the column max) go to the lowest index.
    """
    if vectors.size == 0:
        return vectors
    mags = np.abs(vectors)
    leaders = np.argmax(mags >= mags.max(axis=0) - 1e-12, axis=0)
    signs = np.sign(vectors[leaders, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _sort_descending(values: np.ndarray, vectors: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    order = np.argsort(-values, kind='stable')
    return values[order], vectors[:, order]


def _round_robin(p: int) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Pairings covering every (i, j) once per sweep, disjoint within a step"""
    players = list(range(p + (p % 2)))
    size = len(players)
    steps = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(a, b) for a, b in pairs if a < p and b < p]
        steps.append((np.array([a for a, _ in pairs]), np.array([b for _, b in pairs])))
        players = [players[0], players[-1]] + players[1:-1]
    return steps


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the strict off-diagonal part, summed directly"""
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def _rotation_tangents(app: np.ndarray, aqq: np.ndarray, apq: np.ndarray) -> np.ndarray:
    """
    tan of the angle that zeroes each a_pq

    Where |a_pq| is negligible against the diagonal gap, t = a_pq / (a_qq - a_pp)
    to first order; this also keeps h / (2 a_pq) from overflowing.
    """
    h = aqq - app
    tiny = (apq != 0.0) & (np.abs(apq) <= ROTATION_EPS * np.abs(h))
    safe_apq = np.where(tiny | (apq == 0.0), 1.0, apq)
    theta = h / (2.0 * safe_apq)
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    t = sign / (np.abs(theta) + np.hypot(theta, 1.0))
    t = np.where(tiny, apq / np.where(tiny, h, 1.0), t)
    return np.where(apq == 0.0, 0.0, t)


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi with round-robin ordering

    Each step applies a set of disjoint rotations at once; a sweep visits
    every off-diagonal pair exactly once.
    """
    a = a.copy()
    p = a.shape[0]
    v = np.eye(p)
    norm = np.linalg.norm(a)
    if p == 1 or norm == 0.0:
        return np.diag(a).copy(), v

    steps = _round_robin(p)
    threshold = tol * norm
    for sweep in range(max_sweeps + 1):
        off = _off_norm(a)
        if off <= threshold:
            logger.debug(f"Jacobi converged after {sweep} sweeps (off={off:.3e})")
            return np.diag(a).copy(), v
        if sweep == max_sweeps:
            break

        for P, Q in steps:
            apq = a[P, Q]
            if not np.any(apq != 0.0):
                continue
            t = _rotation_tangents(a[P, P], a[Q, Q], apq)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            col_p, col_q = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = col_p * c - col_q * s
            a[:, Q] = col_p * s + col_q * c
            row_p, row_q = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = c[:, None] * row_p - s[:, None] * row_q
            a[Q, :] = s[:, None] * row_p + c[:, None] * row_q
            a[P, Q] = 0.0
            a[Q, P] = 0.0

            vec_p, vec_q = v[:, P].copy(), v[:, Q].copy()
            v[:, P] = vec_p * c - vec_q * s
            v[:, Q] = vec_p * s + vec_q * c

    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (order {p})")


def sym_eigen(m: Union[SymMatrix, np.ndarray], solver: Optional[str] = None) -> EigenResult:
    """
    Full eigendecomposition of a symmetric matrix

    Args:
        m: Symmetric matrix (arrays are symmetrized)
        solver: 'lapack' (numpy.linalg.eigh) or 'jacobi'; defaults to SPIKE_PCA_SOLVER

    Returns:
        EigenResult with descending values and sign-fixed vectors
    """
    sym = _as_sym(m)
    solver = solver or DEFAULT_SOLVER
    if solver not in SOLVERS:
        raise ValueError(f"unknown solver '{solver}', expected one of {SOLVERS}")

    if solver == 'jacobi':
        values, vectors = _jacobi(sym.entries, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    else:
        try:
            values, vectors = np.linalg.eigh(sym.entries)
        except np.linalg.LinAlgError as e:
            raise NoConvergence(f"eigh failed: {e}") from e

    values, vectors = _sort_descending(values, vectors)
    return EigenResult(values=values, vectors=fix_signs(vectors), path=EigenPath.DIRECT)


def sample_cov(x: np.ndarray) -> SymMatrix:
    """Uncentered sample covariance n^-1 X X^T of a d x n data matrix"""
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or min(x.shape) < 1:
        raise DimensionMismatch(f"expected a non-empty d x n matrix, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise NonFinite("data matrix has NaN or Inf entries")
    return SymMatrix(x @ x.T / x.shape[1])


def reconstruction_residual(m: Union[SymMatrix, np.ndarray], result: EigenResult) -> float:
    """||M - V diag(values) V^T||_F for a full (direct) decomposition"""
    sym = _as_sym(m)
    v = result.vectors
    rebuilt = (v * result.values[:v.shape[1]]) @ v.T
    return float(np.linalg.norm(sym.entries - rebuilt))


def orthonormality_error(result: EigenResult) -> float:
    """max |V^T V - I|"""
    v = result.vectors
    if v.shape[1] == 0:
        return 0.0
    return float(np.max(np.abs(v.T @ v - np.eye(v.shape[1]))))
