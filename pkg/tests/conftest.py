"""
Shared fixtures
"""

import os
import sys

import numpy as np
import pytest

# Add repo root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from harness import ExperimentConfig, TrialRecord  # noqa: E402
from eigencore import EigenPath  # noqa: E402
from spike_model import ScalingLaw, SingleSpike, SpectrumSpec  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_config(tmp_path):
    """Single spike alpha=1, gamma=0.5 on a short grid"""
    return ExperimentConfig(
        spec=SpectrumSpec(SingleSpike(alpha=1.0)),
        law=ScalingLaw(gamma=0.5),
        d_grid=(50, 100),
        master_seed=42,
        replicates=2,
        output_dir=tmp_path / "out",
    )


def make_record(d, replicate, value, n=10, j=1):
    """Hand-built record with one measured index"""
    return TrialRecord(
        d=d,
        n=n,
        replicate=replicate,
        seed=1000 + replicate,
        path=EigenPath.DIRECT,
        wall_ms=1.5,
        indices=(j,),
        spike_count=1,
        eigen_ratio={j: value},
        abs_inner={j: value},
        inner_sq={j: value * value},
        subspace_cos={j: value},
        nonzero_count=n,
    )


@pytest.fixture
def record_factory():
    return make_record
