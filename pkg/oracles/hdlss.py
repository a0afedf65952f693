"""
Fixed-n Constants
K and the per-tier score matrices A*_l at finite d
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from common.errors import MissingScores
from eigencore import SymMatrix, sym_eigen
from sampler import Dataset
from spike_model import TierIndex


@dataclass(frozen=True)
class HdlssConstants:
    k_const: float
    tier_matrices: List[SymMatrix]

    def sandwich(self, l: int, spectrum: Sequence[float], tier: Sequence[int]) -> Tuple[float, float]:
        """
        [lambda_min(A*_l) * min lambda, lambda_max(A*_l) * max lambda] over tier l

        Args:
            l: 1-based tier number
            spectrum: Population eigenvalues
            tier: 1-based indices of tier l
        """
        values = sym_eigen(self.tier_matrices[l - 1]).values
        lams = [spectrum[k - 1] for k in tier]
        return float(values[-1] * min(lams)), float(values[0] * max(lams))


def k_constant(spectrum: Sequence[float], spike_count: int, n: int) -> float:
    """sum of the non-spike eigenvalues over n d"""
    spectrum = np.asarray(spectrum, dtype=float)
    return float(np.sum(spectrum[spike_count:]) / (n * len(spectrum)))


def hdlss_constants(dataset: Dataset, tiers: TierIndex) -> HdlssConstants:
    """
    K and the q_l x q_l matrices A*_l = n^-1 Z_H Z_H^T from the stored scores

    Z_H holds the score rows of tier l; A*_l shares its nonzero eigenvalues
    with the n x n dual form.

    Args:
        dataset: Synthesized dataset carrying its scores
        tiers: Spike tiers (fixed-n view)

    Returns:
        HdlssConstants
    """
    if dataset.scores is None:
        raise MissingScores("dataset carries no scores")
    n = dataset.n
    matrices = []
    for h in tiers.spike_tiers:
        rows = dataset.scores[h[0] - 1:h[-1]]
        matrices.append(SymMatrix(rows @ rows.T / n))
    k = k_constant(dataset.spectrum, tiers.spike_count, n)
    return HdlssConstants(k_const=k, tier_matrices=matrices)
