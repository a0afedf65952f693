"""
Consistency Measures
|<u_hat_j, u_j>|, vector-to-subspace cosines and eigenvalue ratios
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from common.errors import DimensionMismatch, EmptyIndexSet, NotUnit, ZeroDivisionRatio
from common.settings import UNIT_TOL


@dataclass(frozen=True)
class ConsistencyMeasures:
    """
    Measurements for one decomposition

    abs_inner / inner_sq are keyed by 1-based eigen-index, subspace_cos by
    1-based tier number and then eigen-index, eigen_ratio by eigen-index.
    """

    abs_inner: Dict[int, float]
    inner_sq: Dict[int, float]
    subspace_cos: Dict[int, Dict[int, float]]
    eigen_ratio: Dict[int, float]


def _check_unit(v: np.ndarray, name: str) -> None:
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > UNIT_TOL:
        raise NotUnit(f"{name} has norm {norm!r}")


def abs_inner(u: np.ndarray, v: np.ndarray) -> float:
    """|u^T v| for unit vectors, clamped to [0, 1]"""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise DimensionMismatch(f"lengths differ: {u.shape} vs {v.shape}")
    _check_unit(u, "u")
    _check_unit(v, "v")
    return float(min(1.0, abs(float(u @ v))))


def subspace_cos(v: np.ndarray, h: Sequence[int], basis: np.ndarray) -> Tuple[float, float]:
    """
    Cosine of the angle between v and span{u_k : k in h}

    Args:
        v: Unit vector
        h: 1-based column indices into basis
        basis: Orthonormal columns u_1..u_d

    Returns:
        (cos, cos^2) with cos = sqrt(sum_k <v, u_k>^2), clamped to [0, 1]
    """
    idx = [k - 1 for k in h]
    if not idx:
        raise EmptyIndexSet("subspace index set is empty")
    basis = np.asarray(basis, dtype=float)
    if min(idx) < 0 or max(idx) >= basis.shape[1]:
        raise DimensionMismatch(f"index set {list(h)} outside 1..{basis.shape[1]}")
    proj = np.asarray(v, dtype=float) @ basis[:, idx]
    sq = float(min(1.0, float(proj @ proj)))
    return float(np.sqrt(sq)), sq


def eigen_ratios(sample_vals: np.ndarray, pop_vals: np.ndarray) -> np.ndarray:
    """Elementwise sample / population eigenvalue"""
    sample_vals = np.asarray(sample_vals, dtype=float)
    pop_vals = np.asarray(pop_vals, dtype=float)
    if sample_vals.shape != pop_vals.shape:
        raise DimensionMismatch(f"lengths differ: {sample_vals.shape} vs {pop_vals.shape}")
    if np.any(pop_vals == 0):
        raise ZeroDivisionRatio("population eigenvalue is zero")
    return sample_vals / pop_vals


def _projection(v: np.ndarray, idx: List[int], population: Optional[np.ndarray]) -> np.ndarray:
    if population is None:
        return v[idx]
    return v @ population[:, idx]


def measure_all(sample_vals: np.ndarray,
                sample_vecs: np.ndarray,
                spectrum: np.ndarray,
                population: Optional[np.ndarray],
                indices: Sequence[int],
                tiers: Sequence[Sequence[int]]) -> ConsistencyMeasures:
    """
    All measures for the given eigen-indices

    Indices without a sample eigenvector column (beyond the dual-path rank)
    get only an eigenvalue ratio of 0. Each measured index also gets the
    cosine onto the span of the index set that contains it.

    Args:
        sample_vals: Descending sample eigenvalues
        sample_vecs: Sample eigenvectors as columns
        spectrum: Population eigenvalues
        population: Population eigenvectors as columns, None for the identity basis
        indices: 1-based indices to measure individually
        tiers: Index sets (spike tiers, optionally the noise block)

    Returns:
        ConsistencyMeasures
    """
    rank = sample_vecs.shape[1]
    abs_in: Dict[int, float] = {}
    sq: Dict[int, float] = {}
    ratios: Dict[int, float] = {}

    for j in indices:
        ratios[j] = float(eigen_ratios(sample_vals[j - 1:j], spectrum[j - 1:j])[0])
        if j <= rank:
            v = sample_vecs[:, j - 1]
            _check_unit(v, f"sample eigenvector {j}")
            a = float(min(1.0, abs(float(_projection(v, [j - 1], population)[0]))))
            abs_in[j] = a
            sq[j] = a * a

    sub: Dict[int, Dict[int, float]] = {}
    wanted = set(indices)
    for l, h in enumerate(tiers, start=1):
        members = [j for j in h if j in wanted and j <= rank]
        if not members:
            continue
        idx = [k - 1 for k in h]
        per: Dict[int, float] = {}
        for j in members:
            proj = _projection(sample_vecs[:, j - 1], idx, population)
            per[j] = float(np.sqrt(min(1.0, float(proj @ proj))))
        sub[l] = per

    return ConsistencyMeasures(abs_inner=abs_in, inner_sq=sq, subspace_cos=sub, eigen_ratio=ratios)
