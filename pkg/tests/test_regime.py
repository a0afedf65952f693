"""
Regime classification from exponents
"""
import pytest

from common.errors import UnsupportedSpec, ValidationError
from regime import LabelKind, TheoremCase, classify, region_grid, spec_with_alpha
from spike_model import (
    Explicit,
    MultiSpike,
    ScalingLaw,
    SingleSpike,
    SpectrumSpec,
    Tier,
    Tiered,
)


def single(alpha):
    return SpectrumSpec(SingleSpike(alpha=alpha))


class TestGrowingN:

    def test_consistent_example(self):
        report = classify(single(0.8), ScalingLaw(gamma=0.5))
        assert report.labels[1].kind is LabelKind.CONSISTENT
        assert str(report.labels[1]) == "Consistent"
        assert report.cases[1] is TheoremCase.GROWING_CONSISTENT_LARGE_RATIO
        assert report.noise_label.kind is LabelKind.STRONGLY_INCONSISTENT
        assert report.noise_subspace_consistent
        assert report.growing

    def test_boundary(self):
        report = classify(single(0.5), ScalingLaw(gamma=0.5))
        assert report.labels[1].kind is LabelKind.BOUNDARY
        assert report.cases[1] is TheoremCase.GROWING_BOUNDARY
        assert not report.noise_subspace_consistent

    def test_strongly_inconsistent(self):
        report = classify(single(0.3), ScalingLaw(gamma=0.2))
        assert report.labels[1].kind is LabelKind.STRONGLY_INCONSISTENT
        assert report.exponents[1] == pytest.approx(0.5)

    def test_exponent_tolerance(self):
        # 1 - 0.7 - 0.3 is not exactly 0 in floating point
        report = classify(single(0.3), ScalingLaw(gamma=0.7))
        assert report.labels[1].kind is LabelKind.BOUNDARY

    def test_ratio_cases(self):
        assert classify(single(1.0), ScalingLaw(gamma=1.5)).cases[1] is TheoremCase.GROWING_CONSISTENT_SMALL_RATIO
        assert classify(single(0.5), ScalingLaw(gamma=1.0)).cases[1] is TheoremCase.GROWING_CONSISTENT_BALANCED

    def test_noise_cases(self):
        assert classify(single(1.0), ScalingLaw(gamma=1.5)).noise_case is TheoremCase.GROWING_NOISE_SUBSPACE
        assert classify(single(0.5), ScalingLaw(gamma=1.0)).noise_case is TheoremCase.GROWING_NOISE_BALANCED
        assert classify(single(0.0), ScalingLaw(gamma=1.0)).noise_case is TheoremCase.GROWING_BOUNDARY
        assert classify(single(0.3), ScalingLaw(gamma=0.2)).noise_case is TheoremCase.GROWING_STRONGLY_INCONSISTENT

    def test_multi_spike_individually_consistent(self):
        spec = SpectrumSpec(MultiSpike(alpha=1.0, constants=(8.0, 4.0, 2.0)))
        report = classify(spec, ScalingLaw(gamma=0.5))
        assert report.tiers == [[1], [2], [3]]
        assert all(report.labels[j].kind is LabelKind.CONSISTENT for j in (1, 2, 3))

    def test_tiered_mixed(self):
        spec = SpectrumSpec(Tiered((Tier(1.2, 2), Tier(0.3, 1))))
        report = classify(spec, ScalingLaw(gamma=0.5))
        assert str(report.labels[1]) == "SubspaceConsistent(1)"
        assert report.labels[2] == report.labels[1]
        assert report.labels[3].kind is LabelKind.STRONGLY_INCONSISTENT
        assert report.tier_of(3) == 2
        assert report.tier_of(4) == 3
        assert not report.noise_subspace_consistent


class TestFixedN:

    @pytest.mark.parametrize("alpha, kind", [
        (1.5, LabelKind.CONSISTENT),
        (1.0, LabelKind.BOUNDARY),
        (0.5, LabelKind.STRONGLY_INCONSISTENT),
    ])
    def test_single_spike(self, alpha, kind):
        report = classify(single(alpha), ScalingLaw(fixed_n=10))
        assert report.labels[1].kind is kind
        assert not report.growing
        assert report.noise_case is TheoremCase.HDLSS_STRONGLY_INCONSISTENT

    def test_gamma_zero_is_fixed(self):
        report = classify(single(1.5), ScalingLaw(gamma=0.0))
        assert report.cases[1] is TheoremCase.HDLSS_CONSISTENT

    def test_fixed_n_overrides_gamma(self):
        # gamma = 0.8 would make alpha = 0.5 consistent with growing n
        report = classify(single(0.5), ScalingLaw(gamma=0.8, fixed_n=10))
        assert report.labels[1].kind is LabelKind.STRONGLY_INCONSISTENT

    def test_equal_order_spikes_collapse(self):
        spec = SpectrumSpec(MultiSpike(alpha=1.5, constants=(8.0, 4.0, 2.0)))
        report = classify(spec, ScalingLaw(fixed_n=10))
        assert report.tiers == [[1, 2, 3]]
        assert all(str(report.labels[j]) == "SubspaceConsistent(1)" for j in (1, 2, 3))
        assert not report.noise_subspace_consistent

    def test_explicit_unsupported(self):
        with pytest.raises(UnsupportedSpec):
            classify(SpectrumSpec(Explicit((9.0, 1.0))), ScalingLaw(gamma=0.5))


class TestConstantScaling:

    @pytest.mark.parametrize("law", [
        ScalingLaw(gamma=0.5),
        ScalingLaw(gamma=0.2),
        ScalingLaw(gamma=1.0),
        ScalingLaw(fixed_n=10),
    ])
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0, 1.5])
    def test_multi_spike_constants(self, law, alpha):
        base = classify(SpectrumSpec(MultiSpike(alpha=alpha, constants=(8.0, 4.0, 2.0))), law)
        scaled = classify(SpectrumSpec(MultiSpike(alpha=alpha, constants=(24.0, 12.0, 6.0))), law)
        assert scaled.labels == base.labels
        assert scaled.cases == base.cases
        assert scaled.tiers == base.tiers
        assert scaled.noise_case == base.noise_case
        assert scaled.noise_subspace_consistent == base.noise_subspace_consistent

    def test_tier_coefficients(self):
        law = ScalingLaw(gamma=0.5)
        base = classify(SpectrumSpec(Tiered((Tier(1.2, 2, 1.0), Tier(0.3, 1, 1.0)))), law)
        scaled = classify(SpectrumSpec(Tiered((Tier(1.2, 2, 5.0), Tier(0.3, 1, 5.0)))), law)
        assert scaled.labels == base.labels
        assert scaled.cases == base.cases


class TestRegionGrid:

    def test_rows_descending_gamma(self):
        rows = region_grid([0.0, 1.0], [0.5, 1.0], single(0.0))
        assert [label.kind for label in rows[0]] == [LabelKind.BOUNDARY, LabelKind.CONSISTENT]
        assert [label.kind for label in rows[1]] == [LabelKind.STRONGLY_INCONSISTENT, LabelKind.CONSISTENT]

    def test_matches_classify(self):
        alphas = [0.0, 0.25, 0.5, 0.75, 1.0]
        gammas = [0.25, 0.5, 0.75]
        rows = region_grid(alphas, gammas, single(0.0))
        for r, gamma in enumerate(sorted(gammas, reverse=True)):
            for c, alpha in enumerate(alphas):
                assert rows[r][c] == classify(single(alpha), ScalingLaw(gamma=gamma)).labels[1]

    def test_empty_grid(self):
        with pytest.raises(ValidationError):
            region_grid([], [0.5], single(0.0))

    def test_spec_with_alpha(self):
        spec = spec_with_alpha(SpectrumSpec(MultiSpike(alpha=1.0, count=2)), 0.25)
        assert spec.kind.alpha == 0.25
        assert spec.kind.constants == (4.0, 2.0)
        with pytest.raises(UnsupportedSpec):
            spec_with_alpha(SpectrumSpec(Tiered((Tier(1.0, 2),))), 0.5)
