"""
Data Synthesis
X = U Lambda^(1/2) Z for a population spectrum and an identity or Haar basis
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from common.errors import DimensionMismatch
from spike_model import ScalingLaw, SpectrumSpec, build_spectrum, resolve_n
from .rng import make_generator, substream_seed
from .scores import ScoreDistribution, sample_scores

logger = logging.getLogger(__name__)

HAAR_STREAM = 1


class BasisKind(Enum):
    IDENTITY = "identity"
    HAAR = "haar"


@dataclass(frozen=True)
class Basis:
    """Population eigenbasis; a Haar basis without a seed draws from the trial seed"""

    kind: BasisKind = BasisKind.IDENTITY
    seed: Optional[int] = None


@dataclass(frozen=True)
class Dataset:
    x: np.ndarray
    scores: np.ndarray
    basis: Basis
    spectrum: np.ndarray
    seed: int
    u: Optional[np.ndarray] = None

    @property
    def d(self) -> int:
        return self.x.shape[0]

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def population_vectors(self) -> np.ndarray:
        """Columns u_1..u_d of the population basis"""
        return np.eye(self.d) if self.u is None else self.u


def haar_orthogonal(d: int, seed: int) -> np.ndarray:
    """
    Haar-distributed d x d orthogonal matrix

    QR of a Gaussian matrix with Q's columns flipped by sign(diag R).
    """
    g = make_generator(seed).standard_normal((d, d))
    q, r = np.linalg.qr(g)
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def synthesize(spec: SpectrumSpec,
               law: ScalingLaw,
               d: int,
               dist: ScoreDistribution,
               basis: Basis,
               seed: int,
               scores: Optional[np.ndarray] = None) -> Dataset:
    """
    Draw one dataset from the spiked model

    Args:
        spec: Spectrum specification
        law: Sample-size law
        d: Dimension
        dist: Score law
        basis: Identity or Haar population basis
        seed: Trial seed
        scores: Reuse these scores instead of drawing (basis-invariance checks)

    Returns:
        Dataset with the scores kept for the fixed-n oracles
    """
    spectrum = build_spectrum(spec, d)
    n = resolve_n(law, d)
    if scores is None:
        scores = sample_scores(d, n, dist, seed)
    elif scores.shape != (d, n):
        raise DimensionMismatch(f"scores shape {scores.shape} != ({d}, {n})")

    x = np.sqrt(spectrum)[:, None] * scores
    u = None
    if basis.kind is BasisKind.HAAR:
        haar_seed = basis.seed if basis.seed is not None else substream_seed(seed, HAAR_STREAM)
        u = haar_orthogonal(d, haar_seed)
        x = u @ x

    logger.debug(f"synthesized d={d} n={n} dist={dist.value} basis={basis.kind.value} seed={seed}")
    return Dataset(x=x, scores=scores, basis=basis, spectrum=spectrum, seed=seed, u=u)
