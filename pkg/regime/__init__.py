"""
Regime Module
Exponent-symbolic classification into consistency regions
"""

from .classify import (
    LabelKind,
    RegimeLabel,
    RegimeReport,
    TheoremCase,
    classify,
    region_grid,
    spec_with_alpha,
)

__all__ = [
    'LabelKind',
    'RegimeLabel',
    'RegimeReport',
    'TheoremCase',
    'classify',
    'region_grid',
    'spec_with_alpha',
]
