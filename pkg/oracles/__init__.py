"""
Oracles Module
Closed-form limits and rate predictions used as ground truth for simulations
"""

from .limits import (
    nadler_limit,
    paul_limits,
    jung_limit_draw,
    jung_limit_draws,
    bai_yin_edges,
    ks_distance,
)
from .hdlss import HdlssConstants, hdlss_constants, k_constant
from .rates import (
    RateQuantity,
    RatePrediction,
    predict_rate,
    EigenQuantity,
    EigenvalueLimit,
    predict_eigenvalue,
)

__all__ = [
    'nadler_limit',
    'paul_limits',
    'jung_limit_draw',
    'jung_limit_draws',
    'bai_yin_edges',
    'ks_distance',
    'HdlssConstants',
    'hdlss_constants',
    'k_constant',
    'RateQuantity',
    'RatePrediction',
    'predict_rate',
    'EigenQuantity',
    'EigenvalueLimit',
    'predict_eigenvalue',
]
