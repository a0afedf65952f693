"""
Rate Oracles
Clause-specific convergence rates and eigenvalue limits at finite (n, d)
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np

from common.errors import BoundaryCase, DomainError, MissingScores
from common.settings import EXPONENT_TOL
from regime import LabelKind, RegimeReport, TheoremCase, classify
from sampler import Dataset
from spike_model import (
    ScalingLaw,
    SingleSpike,
    SpectrumSpec,
    TierIndex,
    build_spectrum,
    effective_dimension,
    gap_ratios,
    order_tiers,
    resolve_n,
    tier_index,
)
from .hdlss import hdlss_constants, k_constant


class RateQuantity(Enum):
    CONSISTENCY_GAP = "ConsistencyGap"                         # 1 - |<u_hat_j, u_j>|
    STRONG_INCONSISTENCY_LEVEL = "StrongInconsistencyLevel"    # |<u_hat_j, u_j>|
    SUBSPACE_GAP = "SubspaceGap"                               # 1 - cos


@dataclass(frozen=True)
class RatePrediction:
    quantity: RateQuantity
    rate: float
    theorem_case: TheoremCase
    approximate: bool = False


class EigenQuantity(Enum):
    RATIO = "lambda_hat/lambda"
    PER_DIMENSION = "lambda_hat/d"
    ABSOLUTE = "lambda_hat"


@dataclass(frozen=True)
class EigenvalueLimit:
    """Limit (lower == upper) or almost-sure sandwich for one sample eigenvalue"""

    quantity: EigenQuantity
    lower: float
    upper: float
    theorem_case: TheoremCase

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)


@dataclass(frozen=True)
class _Setting:
    report: RegimeReport
    spectrum: np.ndarray
    tiers: TierIndex
    gaps: List[float]
    n: int
    d_eff: int


def _setting(spec: SpectrumSpec, law: ScalingLaw, d: int) -> _Setting:
    report = classify(spec, law)
    spectrum = build_spectrum(spec, d)
    tiers = tier_index(spec, d) if report.growing else order_tiers(spec, d)
    gaps = gap_ratios(spectrum, tiers, base_level=spec.base_level)
    return _Setting(report, spectrum, tiers, gaps, resolve_n(law, d), effective_dimension(spec, d))


def _check_index(s: _Setting, j: int) -> None:
    if not 1 <= j <= s.d_eff:
        raise DomainError(f"index {j} outside 1..{s.d_eff} (nonzero population eigenvalues)")


def predict_rate(spec: SpectrumSpec, law: ScalingLaw, d: int, j: int) -> RatePrediction:
    """
    Convergence rate of the measure that governs index j

    Args:
        spec: Power-law spectrum
        law: Scaling law
        d: Dimension at which every symbol is instantiated
        j: 1-based eigen-index

    Returns:
        RatePrediction
    """
    s = _setting(spec, law, d)
    _check_index(s, j)
    report, n, d_eff = s.report, s.n, s.d_eff
    lam = float(s.spectrum[j - 1])
    single = isinstance(spec.kind, SingleSpike)

    if j <= report.spike_count:
        label = report.labels[j]
        case = report.cases[j]
        if label.kind is LabelKind.BOUNDARY:
            raise BoundaryCase(f"index {j} sits on the consistency boundary ({case.value})")
        if label.kind is LabelKind.STRONGLY_INCONSISTENT:
            ratio = n * lam / d_eff if report.growing else lam / d_eff
            return RatePrediction(RateQuantity.STRONG_INCONSISTENCY_LEVEL, math.sqrt(ratio), case)

        l = report.tier_of(j)
        delta = float(s.spectrum[s.tiers.sets[l - 1][0] - 1])
        if not report.growing:
            ratio = d_eff / delta
        elif case is TheoremCase.GROWING_CONSISTENT_SMALL_RATIO:
            ratio = 1.0 / delta
        else:
            ratio = d_eff / (n * delta)
        if not single:
            ratio = max(s.gaps[l - 1], ratio)
        quantity = RateQuantity.CONSISTENCY_GAP if len(report.tiers[l - 1]) == 1 else RateQuantity.SUBSPACE_GAP
        return RatePrediction(quantity, math.sqrt(ratio), case,
                              approximate=case is TheoremCase.GROWING_CONSISTENT_BALANCED)

    case = report.noise_case
    if not report.growing:
        return RatePrediction(RateQuantity.STRONG_INCONSISTENCY_LEVEL, math.sqrt(lam / d_eff), case)
    if case is TheoremCase.GROWING_BOUNDARY:
        raise BoundaryCase(f"noise index {j} sits on the d/n boundary with a boundary spike")
    if case is TheoremCase.GROWING_STRONGLY_INCONSISTENT:
        return RatePrediction(RateQuantity.STRONG_INCONSISTENCY_LEVEL, math.sqrt(n * lam / d_eff), case)

    last = s.tiers.spike_tiers[-1]
    delta_r = float(s.spectrum[last[0] - 1])
    if case is TheoremCase.GROWING_NOISE_SUBSPACE:
        return RatePrediction(RateQuantity.SUBSPACE_GAP, math.sqrt(max(s.gaps[-1], 1.0 / delta_r)), case)
    return RatePrediction(RateQuantity.SUBSPACE_GAP, math.sqrt(d_eff / (n * delta_r)), case, approximate=True)


def _hdlss_spike_limit(s: _Setting, j: int, dataset: Optional[Dataset], case: TheoremCase) -> EigenvalueLimit:
    if dataset is None or dataset.scores is None:
        raise MissingScores("fixed-n spike eigenvalue limits need the dataset scores")
    consts = hdlss_constants(dataset, s.tiers)
    l = s.report.tier_of(j)
    tier = s.tiers.sets[l - 1]
    if len(tier) == 1:
        z = dataset.scores[j - 1]
        ratio = float(z @ z) / dataset.n
        return EigenvalueLimit(EigenQuantity.RATIO, ratio, ratio, case)
    lower, upper = consts.sandwich(l, s.spectrum, tier)
    return EigenvalueLimit(EigenQuantity.ABSOLUTE, lower, upper, case)


def predict_eigenvalue(spec: SpectrumSpec,
                       law: ScalingLaw,
                       d: int,
                       j: int,
                       dataset: Optional[Dataset] = None) -> EigenvalueLimit:
    """
    Limit of the j-th sample eigenvalue

    Growing n: lambda_hat/lambda -> 1 for consistent spikes (and for noise
    indices up to n ^ (d - m) when d/n -> 0), lambda_hat -> c d/n for the
    rest when d/n -> infinity. Fixed n: lambda_hat/lambda -> Z_j^T Z_j / n
    for consistent singleton tiers, the A*_l sandwich for larger tiers and
    lambda_hat/d -> K otherwise.

    Args:
        spec: Power-law spectrum
        law: Scaling law
        d: Dimension
        j: 1-based eigen-index
        dataset: Needed for fixed-n spike limits

    Returns:
        EigenvalueLimit
    """
    s = _setting(spec, law, d)
    _check_index(s, j)
    report, n, d_eff = s.report, s.n, s.d_eff
    m = report.spike_count
    if j > min(n, d_eff):
        raise DomainError(f"sample eigenvalue {j} is zero when n={n}, d_eff={d_eff}")

    spike = j <= m
    label = report.labels[j].kind if spike else LabelKind.STRONGLY_INCONSISTENT
    case = report.cases[j] if spike else report.noise_case
    if label is LabelKind.BOUNDARY:
        raise BoundaryCase(f"index {j} sits on the consistency boundary ({case.value})")

    if not report.growing:
        if spike and label is not LabelKind.STRONGLY_INCONSISTENT:
            return _hdlss_spike_limit(s, j, dataset, case)
        k = k_constant(s.spectrum, m, n)
        return EigenvalueLimit(EigenQuantity.PER_DIMENSION, k, k, case)

    if spike and label is not LabelKind.STRONGLY_INCONSISTENT:
        return EigenvalueLimit(EigenQuantity.RATIO, 1.0, 1.0, case)
    if not spike and case is TheoremCase.GROWING_NOISE_SUBSPACE and j <= min(n, d_eff - m):
        return EigenvalueLimit(EigenQuantity.RATIO, 1.0, 1.0, case)
    if report.noise_exponent > EXPONENT_TOL:
        level = float(s.spectrum[s.tiers.noise[0] - 1]) * d_eff / n
        return EigenvalueLimit(EigenQuantity.ABSOLUTE, level, level, case)
    raise BoundaryCase(f"no eigenvalue limit is asserted for index {j} ({case.value})")
