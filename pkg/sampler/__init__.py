"""
Sampler Module
Seeded score generation and synthesis of spiked data matrices
"""

from .rng import SEED_GRID_PERIOD, mix64, derive_seed, make_generator, substream_seed
from .scores import ScoreDistribution, sample_scores, fourth_moment
from .synthesis import BasisKind, Basis, Dataset, haar_orthogonal, synthesize

__all__ = [
    'SEED_GRID_PERIOD',
    'mix64',
    'derive_seed',
    'make_generator',
    'substream_seed',
    'ScoreDistribution',
    'sample_scores',
    'fourth_moment',
    'BasisKind',
    'Basis',
    'Dataset',
    'haar_orthogonal',
    'synthesize',
]
