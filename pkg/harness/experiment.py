"""
Experiment Configuration
Validated description of one Monte Carlo experiment
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

from common.errors import ValidationError
from common.settings import ALL_MEASURES, DEFAULT_MEASURES, DEFAULT_REPLICATES, SOLVERS
from sampler import Basis, ScoreDistribution
from sampler.rng import MASK64
from spike_model import ScalingLaw, SpectrumSpec


@dataclass(frozen=True)
class PhaseSettings:
    """Grid for the phase-diagram pipeline"""

    alpha_grid: Tuple[float, ...]
    gamma_grid: Tuple[float, ...]
    d: int = 300
    replicates: int = 5

    def __post_init__(self):
        if not self.alpha_grid or not self.gamma_grid:
            raise ValidationError('phase', "alpha_grid and gamma_grid must be nonempty")
        if self.d < 50:
            raise ValidationError('phase', f"d must be >= 50, got {self.d}")
        if self.replicates < 1:
            raise ValidationError('phase', f"replicates must be >= 1, got {self.replicates}")


@dataclass(frozen=True)
class RateSettings:
    """
    Which rate to check

    response is one of harness.rate_fit.RESPONSES; the predictor is the
    predicted rate of `index` raised to `power`.
    """

    index: int = 1
    response: str = "inner_sq"
    power: float = 1.0

    def __post_init__(self):
        if self.index < 1:
            raise ValidationError('rate', f"index must be >= 1, got {self.index}")
        if self.power <= 0:
            raise ValidationError('rate', f"power must be > 0, got {self.power}")


@dataclass(frozen=True)
class ExperimentConfig:
    spec: SpectrumSpec
    law: ScalingLaw
    d_grid: Tuple[int, ...]
    master_seed: int
    replicates: int = DEFAULT_REPLICATES
    dist: ScoreDistribution = ScoreDistribution.GAUSSIAN
    basis: Basis = field(default_factory=Basis)
    measures: Tuple[str, ...] = DEFAULT_MEASURES
    output_dir: Path = Path("results")
    solver: Optional[str] = None
    phase: Optional[PhaseSettings] = None
    rate: Optional[RateSettings] = None

    def __post_init__(self):
        grid = tuple(int(d) for d in self.d_grid)
        if not grid:
            raise ValidationError('d_grid', "must be nonempty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValidationError('d_grid', f"must be strictly increasing, got {list(grid)}")
        if grid[0] < 2:
            raise ValidationError('d_grid', f"every d must be >= 2, got {list(grid)}")
        object.__setattr__(self, 'd_grid', grid)

        if self.replicates < 1:
            raise ValidationError('replicates', f"must be >= 1, got {self.replicates}")
        if not 0 <= self.master_seed <= MASK64:
            raise ValidationError('master_seed', f"must be a 64-bit unsigned int, got {self.master_seed}")
        unknown = [m for m in self.measures if m not in ALL_MEASURES]
        if unknown:
            raise ValidationError('measures', f"unknown measures {unknown}, expected a subset of {list(ALL_MEASURES)}")
        if self.solver is not None and self.solver not in SOLVERS:
            raise ValidationError('solver', f"expected one of {list(SOLVERS)}, got {self.solver!r}")
        object.__setattr__(self, 'output_dir', Path(self.output_dir))

    @property
    def timing(self) -> bool:
        return "timing" in self.measures
