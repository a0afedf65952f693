"""
Score Distributions
Zero-mean, unit-variance score laws with finite fourth moment
"""

from enum import Enum

import numpy as np

from .rng import make_generator


class ScoreDistribution(Enum):
    GAUSSIAN = "gaussian"
    RADEMACHER = "rademacher"
    SCALED_UNIFORM = "scaled_uniform"


_FOURTH_MOMENTS = {
    ScoreDistribution.GAUSSIAN: 3.0,
    ScoreDistribution.RADEMACHER: 1.0,
    ScoreDistribution.SCALED_UNIFORM: 1.8,
}


def fourth_moment(dist: ScoreDistribution) -> float:
    return _FOURTH_MOMENTS[dist]


def sample_scores(d: int, n: int, dist: ScoreDistribution, seed: int) -> np.ndarray:
    """
    d x n matrix of i.i.d. scores, one column per observation

    Args:
        d: Rows (dimension)
        n: Columns (sample size)
        dist: Score law
        seed: 64-bit seed; equal inputs give bit-identical output

    Returns:
        Array of shape (d, n)
    """
    rng = make_generator(seed)
    if dist is ScoreDistribution.GAUSSIAN:
        return rng.standard_normal((d, n))
    if dist is ScoreDistribution.RADEMACHER:
        return rng.integers(0, 2, size=(d, n)).astype(float) * 2.0 - 1.0
    if dist is ScoreDistribution.SCALED_UNIFORM:
        return np.sqrt(3.0) * rng.uniform(-1.0, 1.0, size=(d, n))
    raise ValueError(f"unknown score distribution: {dist}")
