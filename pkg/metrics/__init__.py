"""
Metrics Module
Angles and inner products between sample and population eigenstructure
"""

from .consistency import (
    ConsistencyMeasures,
    abs_inner,
    subspace_cos,
    eigen_ratios,
    measure_all,
)

__all__ = [
    'ConsistencyMeasures',
    'abs_inner',
    'subspace_cos',
    'eigen_ratios',
    'measure_all',
]
