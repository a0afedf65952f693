"""
Harness Module
Monte Carlo trials, grid sweeps, rate regression and phase diagrams
"""

from .seeds import trial_seed, wielandt_selected
from .experiment import ExperimentConfig, PhaseSettings, RateSettings
from .trial import TrialRecord, run_trial, measurement_tiers, noise_spots
from .aggregate import AggregateRow, aggregate
from .sweep import SweepResult, sweep
from .rate_fit import (
    RateFit,
    RatePoint,
    RESPONSES,
    fit_rate,
    rate_points,
    rate_predictor,
    response_selector,
)
from .phase import PhaseDiagram, phase_diagram

__all__ = [
    'trial_seed',
    'wielandt_selected',
    'ExperimentConfig',
    'PhaseSettings',
    'RateSettings',
    'TrialRecord',
    'run_trial',
    'measurement_tiers',
    'noise_spots',
    'AggregateRow',
    'aggregate',
    'SweepResult',
    'sweep',
    'RateFit',
    'RatePoint',
    'RESPONSES',
    'fit_rate',
    'rate_points',
    'rate_predictor',
    'response_selector',
    'PhaseDiagram',
    'phase_diagram',
]
