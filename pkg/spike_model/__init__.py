"""
Spike Model Module
Population spectrum construction for single, multiple and tiered spike models
"""

from .spectrum import (
    SingleSpike,
    MultiSpike,
    Tier,
    Tiered,
    Explicit,
    SpectrumSpec,
    ScalingLaw,
    spike_values,
    spike_count,
    build_spectrum,
    resolve_n,
    effective_dimension,
)
from .tiers import (
    TierIndex,
    tier_index,
    order_tiers,
    tier_sizes,
    spike_exponents,
    gap_ratios,
)

__all__ = [
    'SingleSpike',
    'MultiSpike',
    'Tier',
    'Tiered',
    'Explicit',
    'SpectrumSpec',
    'ScalingLaw',
    'spike_values',
    'spike_count',
    'build_spectrum',
    'resolve_n',
    'effective_dimension',
    'TierIndex',
    'tier_index',
    'order_tiers',
    'tier_sizes',
    'spike_exponents',
    'gap_ratios',
]
