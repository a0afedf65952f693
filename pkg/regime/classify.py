"""
Regime Classification
Consistent / subspace consistent / strongly inconsistent / boundary labels from power-law exponents
"""

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence

from common.errors import UnsupportedSpec, ValidationError
from common.settings import EXPONENT_TOL
from spike_model import (
    Explicit,
    ScalingLaw,
    SpectrumSpec,
    Tiered,
    spike_exponents,
    tier_sizes,
)


class LabelKind(Enum):
    CONSISTENT = "Consistent"
    SUBSPACE_CONSISTENT = "SubspaceConsistent"
    STRONGLY_INCONSISTENT = "StronglyInconsistent"
    BOUNDARY = "Boundary"


class TheoremCase(Enum):
    """Clause that governs one index"""

    GROWING_CONSISTENT_SMALL_RATIO = "growing/consistent/d-over-n-to-0"
    GROWING_CONSISTENT_LARGE_RATIO = "growing/consistent/d-over-n-to-infinity"
    GROWING_CONSISTENT_BALANCED = "growing/consistent/d-over-n-bounded"
    GROWING_STRONGLY_INCONSISTENT = "growing/strongly-inconsistent"
    GROWING_NOISE_SUBSPACE = "growing/noise/subspace-consistent"
    GROWING_NOISE_BALANCED = "growing/noise/subspace-consistent-d-over-n-bounded"
    GROWING_BOUNDARY = "growing/boundary"
    HDLSS_CONSISTENT = "hdlss/consistent"
    HDLSS_STRONGLY_INCONSISTENT = "hdlss/strongly-inconsistent"
    HDLSS_BOUNDARY = "hdlss/boundary"


@dataclass(frozen=True)
class RegimeLabel:
    kind: LabelKind
    tier: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is LabelKind.SUBSPACE_CONSISTENT:
            return f"{self.kind.value}({self.tier})"
        return self.kind.value


@dataclass(frozen=True)
class RegimeReport:
    """
    Labels for spike indices 1..m and the noise block

    exponents[l] is the growth exponent of d/(n delta_l) for tier l (d/delta_l
    with fixed n); its sign decides the tier. noise_subspace_consistent records
    that the remaining sample eigenvectors are subspace consistent with the
    noise span even though each is individually strongly inconsistent.
    """

    labels: Dict[int, RegimeLabel]
    noise_label: RegimeLabel
    noise_subspace_consistent: bool
    tiers: List[List[int]]
    exponents: Dict[int, float]
    noise_exponent: float
    cases: Dict[int, TheoremCase]
    noise_case: TheoremCase
    growing: bool

    @property
    def spike_count(self) -> int:
        return len(self.labels)

    def tier_of(self, j: int) -> int:
        for l, h in enumerate(self.tiers, start=1):
            if j in h:
                return l
        return len(self.tiers) + 1


def _sign(e: float) -> int:
    if abs(e) <= EXPONENT_TOL:
        return 0
    return 1 if e > 0 else -1


def _consistent_case(gamma: float) -> TheoremCase:
    s = _sign(1.0 - gamma)
    if s < 0:
        return TheoremCase.GROWING_CONSISTENT_SMALL_RATIO
    if s > 0:
        return TheoremCase.GROWING_CONSISTENT_LARGE_RATIO
    return TheoremCase.GROWING_CONSISTENT_BALANCED


def classify(spec: SpectrumSpec, law: ScalingLaw) -> RegimeReport:
    """
    Classify every spike index and the noise block

    Growing n: tier l is consistent iff 1 - gamma - alpha_l < 0. Fixed n
    (or gamma = 0): the same test with gamma = 0, and spikes of equal
    order collapse into one tier.

    Args:
        spec: Power-law spectrum (not Explicit)
        law: Scaling law

    Returns:
        RegimeReport
    """
    if isinstance(spec.kind, Explicit):
        raise UnsupportedSpec("explicit spectra have no exponent structure to classify")

    growing = not law.is_fixed_n
    gamma = law.gamma if growing else 0.0
    exps = spike_exponents(spec)
    sizes = tier_sizes(spec, by_order=not growing)

    tiers: List[List[int]] = []
    start = 1
    for size in sizes:
        tiers.append(list(range(start, start + size)))
        start += size

    labels: Dict[int, RegimeLabel] = {}
    cases: Dict[int, TheoremCase] = {}
    exponents: Dict[int, float] = {}
    for l, h in enumerate(tiers, start=1):
        e = 1.0 - gamma - exps[h[0] - 1]
        exponents[l] = e
        s = _sign(e)
        if s == 0:
            label = RegimeLabel(LabelKind.BOUNDARY)
            case = TheoremCase.GROWING_BOUNDARY if growing else TheoremCase.HDLSS_BOUNDARY
        elif s > 0:
            label = RegimeLabel(LabelKind.STRONGLY_INCONSISTENT)
            case = TheoremCase.GROWING_STRONGLY_INCONSISTENT if growing else TheoremCase.HDLSS_STRONGLY_INCONSISTENT
        else:
            if len(h) == 1:
                label = RegimeLabel(LabelKind.CONSISTENT)
            else:
                label = RegimeLabel(LabelKind.SUBSPACE_CONSISTENT, l)
            case = _consistent_case(gamma) if growing else TheoremCase.HDLSS_CONSISTENT
        for j in h:
            labels[j] = label
            cases[j] = case

    all_consistent = all(_sign(e) < 0 for e in exponents.values())
    noise_exponent = 1.0 - gamma
    if not growing:
        noise_case = TheoremCase.HDLSS_STRONGLY_INCONSISTENT
    elif all_consistent and _sign(noise_exponent) < 0:
        noise_case = TheoremCase.GROWING_NOISE_SUBSPACE
    elif all_consistent and _sign(noise_exponent) == 0:
        noise_case = TheoremCase.GROWING_NOISE_BALANCED
    elif _sign(noise_exponent) == 0:
        noise_case = TheoremCase.GROWING_BOUNDARY
    else:
        noise_case = TheoremCase.GROWING_STRONGLY_INCONSISTENT

    return RegimeReport(
        labels=labels,
        noise_label=RegimeLabel(LabelKind.STRONGLY_INCONSISTENT),
        noise_subspace_consistent=growing and all_consistent,
        tiers=tiers,
        exponents=exponents,
        noise_exponent=noise_exponent,
        cases=cases,
        noise_case=noise_case,
        growing=growing,
    )


def spec_with_alpha(spec: SpectrumSpec, alpha: float) -> SpectrumSpec:
    """Copy of a single- or multi-spike spec with its spike index replaced"""
    if isinstance(spec.kind, (Tiered, Explicit)):
        raise UnsupportedSpec("region grids need a single- or multi-spike template")
    return dataclasses.replace(spec, kind=dataclasses.replace(spec.kind, alpha=alpha))


def region_grid(alpha_values: Sequence[float],
                gamma_values: Sequence[float],
                spec_template: SpectrumSpec) -> List[List[RegimeLabel]]:
    """
    Label of index 1 at every (alpha, gamma) node

    Rows run over gamma in descending order, columns over alpha as given,
    so row 0 is the top row of a rendered diagram.
    """
    if len(alpha_values) == 0 or len(gamma_values) == 0:
        raise ValidationError("phase", "alpha and gamma grids must be nonempty")
    rows = []
    for gamma in sorted(gamma_values, reverse=True):
        law = ScalingLaw(gamma=gamma)
        rows.append([classify(spec_with_alpha(spec_template, a), law).labels[1] for a in alpha_values])
    return rows
