"""
Phase Diagram
Mean <u_hat_1, u_1>^2 over an (alpha, gamma) grid with the classifier's labels overlaid
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from common.errors import ValidationError
from regime import RegimeLabel, region_grid, spec_with_alpha
from sampler import Basis, ScoreDistribution, substream_seed
from spike_model import ScalingLaw, SingleSpike, SpectrumSpec
from .experiment import ExperimentConfig
from .sweep import run_tasks
from .trial import run_trial

logger = logging.getLogger(__name__)

MIN_PHASE_D = 50


@dataclass
class PhaseDiagram:
    """
    Row r holds gamma_values[r] (descending), column c holds alpha_values[c].
    mean_inner_sq is None where every replicate of a node failed.
    """

    alpha_values: List[float]
    gamma_values: List[float]
    mean_inner_sq: List[List[Optional[float]]]
    labels: List[List[RegimeLabel]]
    d: int
    replicates: int
    failures: List[Dict[str, Any]] = field(default_factory=list)

    def matrix(self) -> np.ndarray:
        return np.array([[np.nan if v is None else v for v in row] for row in self.mean_inner_sq])


def phase_diagram(alpha_grid: Sequence[float],
                  gamma_grid: Sequence[float],
                  d: int,
                  replicates: int,
                  master_seed: int,
                  spec_template: Optional[SpectrumSpec] = None,
                  dist: ScoreDistribution = ScoreDistribution.GAUSSIAN,
                  basis: Basis = Basis(),
                  solver: Optional[str] = None,
                  threads: Optional[int] = None) -> PhaseDiagram:
    """
    Run `replicates` trials at every (alpha, gamma) node and average inner_sq of index 1

    Args:
        alpha_grid: Spike indices (columns)
        gamma_grid: Sample indices (rows, rendered top-down in descending order)
        d: Dimension, at least 50
        replicates: Trials per node
        master_seed: Seed for the whole diagram; node k sweeps with master seed
            substream_seed(master_seed, k) at grid index 0
        spec_template: Single- or multi-spike spec whose alpha is replaced per node

    Returns:
        PhaseDiagram
    """
    if len(alpha_grid) == 0 or len(gamma_grid) == 0:
        raise ValidationError('phase', "alpha and gamma grids must be nonempty")
    if d < MIN_PHASE_D:
        raise ValidationError('phase', f"d must be >= {MIN_PHASE_D}, got {d}")
    template = spec_template or SpectrumSpec(SingleSpike(alpha=0.0))
    alphas = [float(a) for a in alpha_grid]
    gammas = sorted((float(g) for g in gamma_grid), reverse=True)

    tasks = []
    for r, gamma in enumerate(gammas):
        law = ScalingLaw(gamma=gamma)
        for c, alpha in enumerate(alphas):
            node = r * len(alphas) + c
            config = ExperimentConfig(
                spec=spec_with_alpha(template, alpha),
                law=law,
                d_grid=(d,),
                master_seed=substream_seed(master_seed, node),
                replicates=replicates,
                dist=dist,
                basis=basis,
                solver=solver,
            )
            for rep in range(replicates):
                tasks.append(((r, c, rep),
                              lambda cfg=config, rep=rep: run_trial(cfg, d, rep, grid_index=0)))

    logger.info(f"Phase diagram: {len(gammas)} x {len(alphas)} nodes, d={d}, {replicates} replicates")
    done, failures = run_tasks(tasks, threads)

    means: List[List[Optional[float]]] = []
    for r in range(len(gammas)):
        row = []
        for c in range(len(alphas)):
            values = [done[(r, c, rep)].inner_sq[1] for rep in range(replicates)
                      if (r, c, rep) in done and 1 in done[(r, c, rep)].inner_sq]
            row.append(float(np.mean(values)) if values else None)
        means.append(row)

    return PhaseDiagram(
        alpha_values=alphas,
        gamma_values=gammas,
        mean_inner_sq=means,
        labels=region_grid(alphas, gammas, template),
        d=d,
        replicates=replicates,
        failures=failures,
    )
