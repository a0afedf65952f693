"""
Rate Regression
Log-log least squares of mean responses against predicted rates
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from common.errors import InsufficientPoints, NonPositiveResponse, ValidationError
from common.settings import LOG_FIT_FLOOR, MIN_FIT_POINTS
from oracles import predict_rate
from spike_model import ScalingLaw, SpectrumSpec
from .trial import TrialRecord

logger = logging.getLogger(__name__)

Selector = Callable[[TrialRecord], Optional[float]]


@dataclass(frozen=True)
class RateFit:
    """
    slope ~ 1 means the rate is sharp; slope > 1 means it is conservative.
    o_constant is max over d of mean response / rate.
    """

    slope: float
    intercept: float
    r_squared: float
    n_points: int
    o_constant: float
    dropped: int = 0


@dataclass(frozen=True)
class RatePoint:
    d: int
    rate: float
    response: float


def _inner_sq(j: int) -> Selector:
    return lambda rec: rec.inner_sq.get(j)


def _abs_inner(j: int) -> Selector:
    return lambda rec: rec.abs_inner.get(j)


def _consistency_gap(j: int) -> Selector:
    def select(rec: TrialRecord) -> Optional[float]:
        a = rec.abs_inner.get(j)
        return None if a is None else 1.0 - a
    return select


def _subspace_gap(j: int) -> Selector:
    def select(rec: TrialRecord) -> Optional[float]:
        c = rec.subspace_cos.get(j)
        return None if c is None else 1.0 - c
    return select


RESPONSES: Dict[str, Callable[[int], Selector]] = {
    'inner_sq': _inner_sq,
    'abs_inner': _abs_inner,
    'consistency_gap': _consistency_gap,
    'subspace_gap': _subspace_gap,
}


def response_selector(name: str, j: int) -> Selector:
    if name not in RESPONSES:
        raise ValidationError('rate', f"unknown response {name!r}, expected one of {sorted(RESPONSES)}")
    return RESPONSES[name](j)


def rate_predictor(spec: SpectrumSpec, law: ScalingLaw, j: int, power: float = 1.0) -> Callable[[int], float]:
    """d -> predict_rate(spec, law, d, j).rate ** power"""
    return lambda d: predict_rate(spec, law, d, j).rate ** power


def rate_points(records: Sequence[TrialRecord],
                predictor: Callable[[int], float],
                response_selector: Selector) -> List[RatePoint]:
    """Mean response per d (replicates averaged) next to the predicted rate"""
    by_d: Dict[int, List[float]] = defaultdict(list)
    for rec in records:
        value = response_selector(rec)
        if value is not None:
            by_d[rec.d].append(value)
    return [RatePoint(d, float(predictor(d)), float(np.mean(by_d[d]))) for d in sorted(by_d)]


def fit_rate(records: Sequence[TrialRecord],
             predictor: Callable[[int], float],
             response_selector: Selector) -> RateFit:
    """
    OLS of log(mean response at d) on log(rate(d))

    Args:
        records: Trial records over at least MIN_FIT_POINTS dimensions
        predictor: d -> predicted rate
        response_selector: record -> response value (None to skip)

    Returns:
        RateFit
    """
    points = rate_points(records, predictor, response_selector)
    if len(points) < MIN_FIT_POINTS:
        raise InsufficientPoints(f"need {MIN_FIT_POINTS} distinct d values, got {len(points)}")

    kept = [p for p in points if p.response > LOG_FIT_FLOOR and p.rate > 0]
    dropped = len(points) - len(kept)
    if dropped:
        logger.warning(f"[WARNING] dropped {dropped} responses at or below {LOG_FIT_FLOOR}")
    if len(kept) < MIN_FIT_POINTS:
        raise NonPositiveResponse(f"only {len(kept)} positive responses left after dropping {dropped}")

    x = np.log([p.rate for p in kept])
    y = np.log([p.response for p in kept])
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, min(1.0, 1.0 - ss_res / ss_tot))
    o_constant = max(p.response / p.rate for p in kept)

    return RateFit(
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        n_points=len(kept),
        o_constant=float(o_constant),
        dropped=dropped,
    )
