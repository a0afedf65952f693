"""
Boundary Limits
Eigenvector limits on the consistency boundary and Wishart edge locations
"""

import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from common.errors import DomainError
from sampler import make_generator


def nadler_limit(lambda1: float, c: float) -> float:
    """
    Limit of <u_hat_1, u_1>^2 when d/n -> c with a fixed spike

    ((lambda1 - 1)^2 - c)_+ / ((lambda1 - 1)^2 + c (lambda1 - 1))
    """
    if lambda1 <= 1:
        raise DomainError(f"lambda1 must be > 1, got {lambda1}")
    if c < 0:
        raise DomainError(f"c must be >= 0, got {c}")
    gap = lambda1 - 1.0
    return max(gap * gap - c, 0.0) / (gap * gap + c * gap)


def paul_limits(spectrum: Sequence[float], c: float, m: int) -> List[float]:
    """
    Per-spike version of nadler_limit for the first m eigenvalues

    Spikes at or below the noise level have limit 0.
    """
    out = []
    for lam in list(spectrum)[:m]:
        out.append(nadler_limit(lam, c) if lam > 1 else 0.0)
    return out


def jung_limit_draws(n: int, c: float, count: int, seed: int) -> np.ndarray:
    """count draws of chi2_n / (chi2_n + c), chi2_n as a sum of n squared Gaussians"""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if c < 0:
        raise DomainError(f"c must be >= 0, got {c}")
    g = make_generator(seed).standard_normal((count, n))
    chi2 = np.sum(g * g, axis=1)
    return chi2 / (chi2 + c)


def jung_limit_draw(n: int, c: float, seed: int) -> float:
    """One draw of the fixed-n boundary law of <u_hat_1, u_1>^2"""
    return float(jung_limit_draws(n, c, 1, seed)[0])


def bai_yin_edges(c: float) -> Tuple[float, float]:
    """
    Limits of the largest and smallest nonzero eigenvalues of a white Wishart

    Returns:
        ((1 + sqrt(c))^2, (1 - sqrt(c))^2)
    """
    if c < 0:
        raise DomainError(f"c must be >= 0, got {c}")
    root = math.sqrt(c)
    return (1.0 + root) ** 2, (1.0 - root) ** 2


def ks_distance(sample: Sequence[float], reference: Sequence[float]) -> float:
    """Two-sample Kolmogorov-Smirnov statistic"""
    return float(stats.ks_2samp(np.asarray(sample, dtype=float), np.asarray(reference, dtype=float)).statistic)
