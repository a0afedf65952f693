"""
Trials, sweeps, aggregation, rate fits and phase diagrams.
"""
import dataclasses
import importlib
import math

import numpy as np
import pytest

from common.errors import (
    InsufficientPoints,
    NoConvergence,
    NonPositiveResponse,
    TrialError,
    ValidationError,
)
from eigencore import EigenPath
from harness import (
    ExperimentConfig,
    PhaseSettings,
    RateSettings,
    aggregate,
    fit_rate,
    noise_spots,
    phase_diagram,
    rate_points,
    rate_predictor,
    response_selector,
    run_trial,
    sweep,
    trial_seed,
    wielandt_selected,
)
from regime import region_grid
from sampler import derive_seed
from spike_model import ScalingLaw, SingleSpike, SpectrumSpec

trial_module = importlib.import_module("harness.trial")
sweep_module = importlib.import_module("harness.sweep")
phase_module = importlib.import_module("harness.phase")


def _rows_without_timing(records):
    return [{k: v for k, v in row.items() if k != 'wall_ms'} for rec in records for row in rec.rows()]


class TestSeeds:

    def test_trial_seed(self):
        assert trial_seed(42, 1, 3) == derive_seed(42, 1, 3)

    def test_spot_check_fraction(self):
        picked = sum(wielandt_selected(derive_seed(1, 0, r), 100) for r in range(4000))
        assert 140 <= picked <= 260

    def test_spot_check_skips_large_d(self):
        assert not any(wielandt_selected(derive_seed(1, 0, r), 201) for r in range(500))

    def test_noise_spots(self):
        assert noise_spots(1, 10, 100) == [2, 3, 10]
        assert noise_spots(1, 2, 100) == [2]
        assert noise_spots(0, 5, 3) == [1, 2, 3]


class TestExperimentConfig:

    def test_defaults(self):
        config = ExperimentConfig(spec=SpectrumSpec(SingleSpike(1.0)), law=ScalingLaw(gamma=0.5),
                                  d_grid=[100], master_seed=1)
        assert config.replicates == 10
        assert config.d_grid == (100,)
        assert not config.timing

    @pytest.mark.parametrize("changes, key", [
        ({'d_grid': (100, 50)}, 'd_grid'),
        ({'d_grid': ()}, 'd_grid'),
        ({'replicates': 0}, 'replicates'),
        ({'master_seed': -1}, 'master_seed'),
        ({'measures': ('eigen_ratio', 'angle')}, 'measures'),
        ({'solver': 'qr'}, 'solver'),
    ])
    def test_invalid(self, small_config, changes, key):
        with pytest.raises(ValidationError) as exc:
            dataclasses.replace(small_config, **changes)
        assert exc.value.key == key

    def test_phase_and_rate_settings(self):
        with pytest.raises(ValidationError):
            PhaseSettings(alpha_grid=(1.0,), gamma_grid=(0.5,), d=40)
        with pytest.raises(ValidationError):
            RateSettings(index=0)
        with pytest.raises(ValidationError):
            RateSettings(power=0.0)


class TestRunTrial:

    def test_record_shape(self, small_config):
        rec = run_trial(small_config, 50, 0)
        assert rec.n == 7
        assert rec.path is EigenPath.DUAL
        assert rec.indices == (1, 2, 3, 7)
        assert rec.nonzero_count <= min(rec.n, rec.d)
        assert all(v > 0 for v in rec.eigen_ratio.values())
        assert all(0.0 <= v <= 1.0 for v in rec.abs_inner.values())
        assert set(rec.inner_sq) == {1, 2, 3, 7}
        assert rec.seed == trial_seed(42, 0, 0)

    def test_deterministic(self, small_config):
        a = run_trial(small_config, 100, 1)
        b = run_trial(small_config, 100, 1)
        assert _rows_without_timing([a]) == _rows_without_timing([b])

    def test_d_outside_grid(self, small_config):
        with pytest.raises(ValidationError):
            run_trial(small_config, 70, 0)
        assert run_trial(small_config, 70, 0, grid_index=5).d == 70

    def test_deep_hdlss_consistency(self, tmp_path):
        config = ExperimentConfig(spec=SpectrumSpec(SingleSpike(alpha=2.0)), law=ScalingLaw(fixed_n=10),
                                  d_grid=(1000,), master_seed=3, replicates=1, output_dir=tmp_path)
        rec = run_trial(config, 1000, 0)
        assert 0.8 < rec.inner_sq[1] <= 1.0

    def test_wielandt_spot_check(self, small_config):
        replicate = next(r for r in range(2000) if wielandt_selected(trial_seed(42, 0, r), 50))
        rec = run_trial(small_config, 50, replicate)
        assert rec.wielandt_ok is True

    def test_numerical_error_annotated(self, small_config, monkeypatch):
        def fail(*args, **kwargs):
            raise NoConvergence("budget exhausted")

        monkeypatch.setattr(trial_module, "decompose", fail)
        with pytest.raises(TrialError) as exc:
            run_trial(small_config, 100, 1)
        assert exc.value.coords == {'d': 100, 'n': 10, 'replicate': 1, 'seed': trial_seed(42, 1, 1)}
        assert isinstance(exc.value.cause, NoConvergence)


class TestSweep:

    def test_cardinality_and_order(self, small_config):
        config = dataclasses.replace(small_config, d_grid=(40, 60, 80), replicates=5)
        result = sweep(config, threads=1)
        assert result.ok
        assert len(result.records) == 15
        assert [(r.d, r.replicate) for r in result.records] == [(d, k) for d in (40, 60, 80) for k in range(5)]

    def test_threads_do_not_change_results(self, small_config):
        serial = sweep(small_config, threads=1)
        parallel = sweep(small_config, threads=4)
        assert _rows_without_timing(serial.records) == _rows_without_timing(parallel.records)
        assert [row.as_dict() for row in serial.aggregates] == [row.as_dict() for row in parallel.aggregates]

    def test_failures_reported(self, small_config, monkeypatch):
        real = sweep_module.run_trial

        def flaky(config, d, replicate, grid_index=None):
            if (d, replicate) == (100, 1):
                coords = {'d': d, 'n': 10, 'replicate': replicate, 'seed': 7}
                raise TrialError(coords, NoConvergence("injected"))
            return real(config, d, replicate, grid_index=grid_index)

        monkeypatch.setattr(sweep_module, "run_trial", flaky)
        result = sweep(small_config, threads=2)
        assert not result.ok
        assert len(result.records) == 3
        assert result.failures == [{'d': 100, 'n': 10, 'replicate': 1, 'seed': 7,
                                    'error': 'injected', 'type': 'NoConvergence'}]


    def test_wielandt_violation_reported(self, small_config, monkeypatch):
        real = sweep_module.run_trial

        def breached(config, d, replicate, grid_index=None):
            rec = real(config, d, replicate, grid_index=grid_index)
            return dataclasses.replace(rec, wielandt_ok=False) if (d, replicate) == (50, 1) else rec

        monkeypatch.setattr(sweep_module, "run_trial", breached)
        result = sweep(small_config, threads=2)
        assert len(result.records) == 4
        assert not result.ok
        assert len(result.failures) == 1
        failure = result.failures[0]
        assert (failure["d"], failure["n"], failure["replicate"]) == (50, 7, 1)
        assert failure["type"] == "WielandtViolation"

class TestAggregate:

    def test_mean_and_stderr(self, record_factory):
        rows = aggregate([record_factory(50, 1, 0.7), record_factory(50, 0, 0.5)])
        assert len(rows) == 1
        row = rows[0]
        assert (row.d, row.j, row.count) == (50, 1, 2)
        np.testing.assert_allclose(row.mean['abs_inner'], 0.6)
        np.testing.assert_allclose(row.stderr['abs_inner'], 0.1)
        np.testing.assert_allclose(row.mean['inner_sq'], (0.49 + 0.25) / 2)

    def test_single_replicate_has_no_stderr(self, record_factory):
        row = aggregate([record_factory(50, 0, 0.5)])[0]
        assert row.stderr['abs_inner'] is None
        assert row.as_dict()['abs_inner_stderr'] is None

    def test_sorted_by_d_then_j(self, record_factory):
        rows = aggregate([record_factory(80, 0, 0.5, j=2), record_factory(40, 0, 0.5, j=3),
                          record_factory(40, 0, 0.5, j=1)])
        assert [(r.d, r.j) for r in rows] == [(40, 1), (40, 3), (80, 2)]


class TestRateFit:

    def test_self_fit(self, record_factory):
        records = [record_factory(d, r, 3.0 / d) for d in (100, 200, 400, 800) for r in range(3)]
        fit = fit_rate(records, lambda d: 1.0 / d, response_selector('abs_inner', 1))
        np.testing.assert_allclose(fit.slope, 1.0)
        np.testing.assert_allclose(fit.intercept, math.log(3.0))
        np.testing.assert_allclose(fit.r_squared, 1.0)
        np.testing.assert_allclose(fit.o_constant, 3.0)
        assert fit.n_points == 4

    def test_squared_response(self, record_factory):
        records = [record_factory(d, 0, 1.0 / d) for d in (100, 200, 400)]
        fit = fit_rate(records, lambda d: d ** -0.5, response_selector('abs_inner', 1))
        np.testing.assert_allclose(fit.slope, 2.0)

    def test_mean_per_d(self, record_factory):
        records = [record_factory(100, 0, 0.2), record_factory(100, 1, 0.4), record_factory(200, 0, 0.1)]
        points = rate_points(records, lambda d: 1.0, response_selector('abs_inner', 1))
        assert [p.d for p in points] == [100, 200]
        np.testing.assert_allclose([p.response for p in points], [0.3, 0.1])

    def test_insufficient_points(self, record_factory):
        records = [record_factory(d, 0, 0.5) for d in (100, 200)]
        with pytest.raises(InsufficientPoints):
            fit_rate(records, lambda d: 1.0 / d, response_selector('abs_inner', 1))

    def test_floor_responses_dropped(self, record_factory):
        records = [record_factory(d, 0, 1.0) for d in (100, 200, 400)]
        with pytest.raises(NonPositiveResponse):
            fit_rate(records, lambda d: 1.0 / d, response_selector('consistency_gap', 1))

    def test_predictor(self):
        predictor = rate_predictor(SpectrumSpec(SingleSpike(alpha=0.5)), ScalingLaw(gamma=0.25), 1, power=2.0)
        np.testing.assert_allclose(predictor(1600), 6 * 40.0 / 1600)

    def test_unknown_response(self):
        with pytest.raises(ValidationError):
            response_selector('angle', 1)


class TestPhaseDiagram:

    def test_small_grid(self):
        diagram = phase_diagram([0.5, 1.5], [0.5, 1.0], d=60, replicates=2, master_seed=3)
        assert diagram.gamma_values == [1.0, 0.5]
        assert diagram.alpha_values == [0.5, 1.5]
        assert diagram.matrix().shape == (2, 2)
        assert not diagram.failures
        assert all(0.0 <= v <= 1.0 for row in diagram.mean_inner_sq for v in row)
        assert diagram.labels == region_grid([0.5, 1.5], [0.5, 1.0], SpectrumSpec(SingleSpike(alpha=0.0)))

    def test_deterministic(self):
        a = phase_diagram([1.0], [0.5], d=50, replicates=2, master_seed=9, threads=1)
        b = phase_diagram([1.0], [0.5], d=50, replicates=2, master_seed=9, threads=3)
        assert a.mean_inner_sq == b.mean_inner_sq

    def test_nodes_draw_independent_seeds(self, monkeypatch):
        seen = []
        real = phase_module.run_trial

        def recording(config, d, replicate, grid_index=None):
            seen.append(trial_seed(config.master_seed, grid_index, replicate))
            return real(config, d, replicate, grid_index=grid_index)

        monkeypatch.setattr(phase_module, "run_trial", recording)
        alphas = [0.25 * k for k in range(9)]
        diagram = phase_diagram(alphas, [0.25, 0.5], d=50, replicates=2, master_seed=7, threads=1)
        assert not diagram.failures
        assert len(seen) == 9 * 2 * 2
        assert len(set(seen)) == len(seen)

    def test_small_d_rejected(self):
        with pytest.raises(ValidationError):
            phase_diagram([1.0], [0.5], d=20, replicates=1, master_seed=1)
