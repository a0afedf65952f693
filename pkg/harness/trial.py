"""
Single Trial
Synthesize one dataset, decompose it and measure against the known population
"""

import logging
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from common.errors import SpikePcaError, TrialError, ValidationError
from common.settings import DUAL_RANK_CUT
from eigencore import EigenPath, choose_path, decompose, dual_split, wielandt_check_all
from metrics import measure_all
from sampler import synthesize
from spike_model import (
    Explicit,
    ScalingLaw,
    SpectrumSpec,
    TierIndex,
    effective_dimension,
    order_tiers,
    resolve_n,
    tier_index,
)
from .experiment import ExperimentConfig
from .seeds import trial_seed, wielandt_selected

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialRecord:
    """
    Measurements of one (d, replicate) trial

    Dicts are keyed by 1-based eigen-index. Spike indices come first, then the
    noise spot indices m+1, m+2 and min(n, d_eff). subspace_cos is the cosine
    of u_hat_j onto the span of its own tier (the noise block for spot indices).
    """

    d: int
    n: int
    replicate: int
    seed: int
    path: EigenPath
    wall_ms: float
    indices: Tuple[int, ...]
    spike_count: int
    eigen_ratio: Dict[int, float]
    abs_inner: Dict[int, float]
    inner_sq: Dict[int, float]
    subspace_cos: Dict[int, float]
    nonzero_count: int
    wielandt_ok: Optional[bool] = None

    @property
    def coords(self) -> Dict[str, int]:
        return {'d': self.d, 'n': self.n, 'replicate': self.replicate, 'seed': self.seed}

    def rows(self) -> List[Dict[str, object]]:
        """One flat row per measured index; missing measures are None"""
        return [
            {
                'd': self.d,
                'n': self.n,
                'replicate': self.replicate,
                'seed': self.seed,
                'j': j,
                'eigen_ratio': self.eigen_ratio.get(j),
                'abs_inner': self.abs_inner.get(j),
                'inner_sq': self.inner_sq.get(j),
                'subspace_cos': self.subspace_cos.get(j),
                'path': self.path.value,
                'wall_ms': self.wall_ms,
            }
            for j in self.indices
        ]


def measurement_tiers(spec: SpectrumSpec, law: ScalingLaw, d: int) -> TierIndex:
    """Declared tiers for growing n; tiers by growth order for fixed n"""
    if law.is_fixed_n and not isinstance(spec.kind, Explicit):
        return order_tiers(spec, d)
    return tier_index(spec, d)


def noise_spots(m: int, n: int, d_eff: int) -> List[int]:
    """m+1, m+2 and the last nonzero index min(n, d_eff), where they exist"""
    last = min(n, d_eff)
    return sorted({j for j in (m + 1, m + 2, last) if m < j <= last})


def _run(config: ExperimentConfig, d: int, replicate: int, seed: int) -> TrialRecord:
    start = time.perf_counter()
    ds = synthesize(config.spec, config.law, d, config.dist, config.basis, seed)
    path = choose_path(d, ds.n)
    result = decompose(ds.x, path=path, solver=config.solver)

    tiers = measurement_tiers(config.spec, config.law, d)
    m = tiers.spike_count
    d_eff = effective_dimension(config.spec, d)
    indices = [j for j in range(1, m + 1) if j <= min(ds.n, d_eff)] + noise_spots(m, ds.n, d_eff)

    measures = measure_all(result.values, result.vectors, ds.spectrum, ds.u, indices, tiers.sets)
    own_cos: Dict[int, float] = {}
    for per in measures.subspace_cos.values():
        own_cos.update(per)

    wielandt_ok = None
    if wielandt_selected(seed, d):
        a, b = dual_split(ds.scores, ds.spectrum, m)
        checks = wielandt_check_all(a, b, solver=config.solver)
        wielandt_ok = all(c.holds for c in checks)
        if not wielandt_ok:
            bad = [j for j, c in enumerate(checks, start=1) if not c.holds]
            logger.error(f"Wielandt bounds violated at d={d} replicate={replicate} seed={seed}: j={bad}")

    top = result.values[0]
    nonzero = int(np.count_nonzero(result.values > DUAL_RANK_CUT * top)) if top > 0 else 0
    wall_ms = (time.perf_counter() - start) * 1000.0

    return TrialRecord(
        d=d,
        n=ds.n,
        replicate=replicate,
        seed=seed,
        path=result.path,
        wall_ms=wall_ms,
        indices=tuple(indices),
        spike_count=m,
        eigen_ratio=measures.eigen_ratio,
        abs_inner=measures.abs_inner,
        inner_sq=measures.inner_sq,
        subspace_cos=own_cos,
        nonzero_count=nonzero,
        wielandt_ok=wielandt_ok,
    )


def run_trial(config: ExperimentConfig, d: int, replicate: int, grid_index: Optional[int] = None) -> TrialRecord:
    """
    Run one trial

    Args:
        config: Experiment configuration
        d: Dimension, a member of config.d_grid unless grid_index is given
        replicate: Replicate number
        grid_index: Seed grid coordinate; defaults to the position of d in d_grid

    Returns:
        TrialRecord

    Raises:
        TrialError: numerical failure, annotated with (d, replicate, seed)
    """
    if grid_index is None:
        if d not in config.d_grid:
            raise ValidationError('d_grid', f"d={d} is not in the grid {list(config.d_grid)}")
        grid_index = config.d_grid.index(d)

    seed = trial_seed(config.master_seed, grid_index, replicate)
    n = resolve_n(config.law, d)
    try:
        return _run(config, d, replicate, seed)
    except SpikePcaError as e:
        if e.category != "numerical":
            raise
        raise TrialError({'d': d, 'n': n, 'replicate': replicate, 'seed': seed}, e) from e
