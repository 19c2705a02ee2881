"""Tests for the ratio, the supremum search and the divergence checks."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fmetric.enums import Regime, Verdict
from fmetric.errors import DimensionMismatchError, DivergentMetricError
from fmetric.measure import DiscreteMeasure, GaussianMeasure, SpectralMeasure
from fmetric.metric import (FourierDifference, MetricEstimate, SupremumSearch, divergenceCheck, dm,
                            goldenSectionMax, metricAxiomsProbe, ratio, remainderKernel, sphereDirections)
from fmetric.multiindex import MultiIndex


def symmetricPair():
    return DiscreteMeasure([[-1.0], [1.0]], [0.5, 0.5])


def threeAtoms():
    return DiscreteMeasure([[-2.0], [0.0], [2.0]], [0.125, 0.75, 0.125])


def oracle():
    xi = np.arange(1, 500001) * 1e-4
    return float(np.max((1 - np.cos(xi)) ** 2 / (2 * xi * xi)))


class TestHelpers:

    def test_remainder_kernel_matches_direct_formula(self):
        theta = np.array([0.5, -0.8, 2.0, -3.0])
        direct = np.exp(-1j * theta) - (1 - 1j * theta - theta ** 2 / 2)
        np.testing.assert_allclose(remainderKernel(2)(theta), direct, rtol=1e-12)

    def test_remainder_kernel_is_accurate_near_zero(self):
        theta = np.array([1e-4])
        #leading term (-i theta)^3 / 3!
        assert remainderKernel(2)(theta)[0] == pytest.approx(1j * 1e-12 / 6, rel=1e-6)

    def test_golden_section(self):
        assert goldenSectionMax(lambda x: -(x - 1.0) ** 2, 0.0, 3.0) == pytest.approx(1.0, abs=1e-6)
        assert goldenSectionMax(np.sin, 0.0, 3.0) == pytest.approx(np.pi / 2, abs=1e-6)

    @pytest.mark.parametrize("d, count", [(1, 2), (2, 64), (3, 256)])
    def test_sphere_directions(self, d, count):
        directions = sphereDirections(d)
        assert directions.shape == (count, d)
        np.testing.assert_allclose(np.linalg.norm(directions, axis=1), 1.0)


class TestRatio:

    def test_identical_measures(self):
        assert ratio(symmetricPair(), symmetricPair(), 2, 0.7) == 0.0

    def test_reduced_formula(self):
        assert ratio(symmetricPair(), threeAtoms(), 2, np.pi) == pytest.approx(2 / np.pi ** 2, rel=1e-12)
        xi = np.linspace(0.01, 5, 50).reshape(-1, 1)
        expected = (1 - np.cos(xi[:, 0])) ** 2 / (2 * xi[:, 0] ** 2)
        np.testing.assert_allclose(ratio(symmetricPair(), threeAtoms(), 2, xi), expected, rtol=1e-9, atol=1e-15)

    def test_zero_frequency(self):
        with pytest.raises(ValueError):
            ratio(symmetricPair(), threeAtoms(), 2, 0.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            ratio(symmetricPair(), DiscreteMeasure.dirac([0.0, 0.0]), 2, 1.0)

    def test_total_variation_bound(self):
        mu, nu = symmetricPair(), threeAtoms()
        b = mu.totalVariationBound() + nu.totalVariationBound()
        for r in (3.0, 10.0, 100.0):
            assert ratio(mu, nu, 2, r) <= b / r ** 2

    def test_small_moment_gaps_are_kept(self):
        mu = DiscreteMeasure.dirac([0.0])
        nu = DiscreteMeasure([[0.0]], [1.0 + 5e-10])
        gap = abs((1.0 + 5e-10) - 1.0)
        for xi in (1e-3, 0.5, 1.0, 1.5):
            assert ratio(mu, nu, 2, xi) == pytest.approx(gap / xi ** 2, rel=1e-12)

    def test_continuous_across_the_unit_sphere(self):
        mu = DiscreteMeasure.dirac([0.0])
        nu = DiscreteMeasure([[0.0]], [1.0 + 5e-10])
        inside, outside = ratio(mu, nu, 2, np.array([[1.0 - 1e-9], [1.0 + 1e-9]]))
        assert inside == pytest.approx(outside, rel=1e-6)


class TestDifferenceModes:

    def test_modes(self):
        assert FourierDifference(symmetricPair(), symmetricPair(), 2).mode == "zero"
        assert FourierDifference(symmetricPair(), threeAtoms(), 2).mode == "space"
        assert FourierDifference(symmetricPair(), GaussianMeasure([0.0], [[1.0]]), 2).mode == "plain"

    def test_rounding_residuals_are_projected_out(self):
        diff = FourierDifference(symmetricPair(), threeAtoms(), 2)
        assert diff.mismatch == []

    def test_near_and_far_branches_agree(self):
        diff = FourierDifference(symmetricPair(), threeAtoms(), 2)
        xi = np.array([[0.999999], [1.000001]])
        values = diff.evaluate(xi)
        expected = -0.5 * (1 - np.cos(xi[:, 0])) ** 2
        np.testing.assert_allclose(values, expected, rtol=1e-9)


class TestDm:

    def test_identical(self):
        estimate = dm(symmetricPair(), symmetricPair(), 2, 1e-8)
        assert estimate.value == 0.0

    def test_matched_pair(self):
        estimate = dm(symmetricPair(), threeAtoms(), 2, 1e-6)
        assert estimate.value == pytest.approx(oracle(), abs=1e-5)
        assert abs(estimate.argmax[0]) == pytest.approx(2.3311, abs=1e-3)
        assert estimate.certified
        assert estimate.tailBound <= 1e-6

    def test_value_is_attained_at_argmax(self):
        mu, nu = symmetricPair(), threeAtoms()
        estimate = dm(mu, nu, 2)
        assert ratio(mu, nu, 2, estimate.argmax) == estimate.value
        assert estimate.lowerBound <= estimate.value
        assert estimate.value <= estimate.finitenessBound

    def test_regimes(self):
        estimate = dm(symmetricPair(), threeAtoms(), 2)
        assert set(estimate.regimeMax) == {Regime.NEAR, Regime.MID, Regime.FAR}
        #(1 - cos 1)^2 / 2 is the largest value on the unit ball
        assert estimate.peanoConstant == pytest.approx((1 - math.cos(1.0)) ** 2 / 2, rel=1e-6)
        assert estimate.regimeMax[Regime.FAR] <= estimate.tailBound
        assert estimate.regimeMax[Regime.MID] == pytest.approx(estimate.value)

    def test_symmetric(self):
        a = dm(symmetricPair(), threeAtoms(), 2).value
        b = dm(threeAtoms(), symmetricPair(), 2).value
        assert a == b

    def test_csv_row(self):
        estimate = dm(symmetricPair(), threeAtoms(), 2)
        assert len(MetricEstimate.header(1)) == len(estimate.toRow())

    def test_divergence(self):
        with pytest.raises(DivergentMetricError) as info:
            dm(DiscreteMeasure.dirac([0.0]), DiscreteMeasure.dirac([1.0]), 2)
        assert info.value.beta == MultiIndex([1])
        assert info.value.exponent == pytest.approx(-1.0)
        assert "divergent beta=[1]" in str(info.value)

    def test_divergence_without_moments(self):
        shifted = SpectralMeasure(1, lambda xi: np.exp(-1j * xi[:, 0]), 1.0)
        with pytest.raises(DivergentMetricError) as info:
            dm(DiscreteMeasure.dirac([0.0]), shifted, 2)
        assert info.value.beta is None
        assert info.value.exponent < -0.5

    def test_gaussian_against_discrete(self):
        gaussian = GaussianMeasure([0.0], [[1.0]])
        estimate = dm(gaussian, symmetricPair(), 2)
        #(e^{-xi^2/2} - cos xi) / xi^2 on a dense grid
        xi = np.linspace(1e-3, 20, 200001)
        expected = np.max(np.abs(np.exp(-xi * xi / 2) - np.cos(xi)) / xi ** 2)
        assert estimate.value == pytest.approx(expected, abs=1e-6)

    def test_custom_search(self):
        search = SupremumSearch(midSamples=256, candidates=2, sweeps=1)
        estimate = dm(symmetricPair(), threeAtoms(), 2, search=search)
        assert estimate.value == pytest.approx(oracle(), abs=1e-5)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            dm(symmetricPair(), threeAtoms(), 1)
        with pytest.raises(ValueError):
            dm(symmetricPair(), threeAtoms(), 2, 0.0)
        with pytest.raises(ValueError):
            SupremumSearch(nearFactor=1.5)


class TestDivergenceCheck:

    def test_examples(self):
        verdict = divergenceCheck(DiscreteMeasure.dirac([0.0]), DiscreteMeasure.dirac([1.0]), 2)
        assert verdict.verdict == Verdict.DIVERGENT
        assert verdict.beta == MultiIndex([1])
        assert divergenceCheck(threeAtoms(), threeAtoms(), 2).finite
        assert divergenceCheck(symmetricPair(), threeAtoms(), 2).finite

    def test_lowest_order_first(self):
        mu = DiscreteMeasure([[0.0, 0.0]], [1.0])
        nu = DiscreteMeasure([[1.0, 1.0], [-1.0, -1.0]], [0.5, 0.5])
        verdict = divergenceCheck(mu, nu, 2)
        assert verdict.beta == MultiIndex([2, 0])


class TestAxioms:

    def test_single_measure(self):
        report = metricAxiomsProbe([symmetricPair()], 2)
        assert report.passed

    def test_pair_and_midpoint(self):
        mu, nu = symmetricPair(), threeAtoms()
        mid = mu.scale(0.5).add(nu.scale(0.5))
        report = metricAxiomsProbe([mu, nu, mid], 2)
        assert report.symmetric
        assert report.nonNegative
        assert report.triangle
        assert report.identity
        assert report.distances[0, 2] == pytest.approx(report.distances[0, 1] / 2, abs=1e-6)


def translate(mu, shift):
    return DiscreteMeasure(mu.points + shift, mu.weights)


class TestMetricProperties:

    @given(st.floats(min_value=0.1, max_value=5.0), st.floats(min_value=0.0, max_value=2 * np.pi))
    @settings(max_examples=5, deadline=None)
    def test_homogeneous(self, modulus, phase):
        a = modulus * np.exp(1j * phase)
        mu, nu = symmetricPair(), threeAtoms()
        scaled = dm(mu.scale(a), nu.scale(a), 2).value
        assert scaled == pytest.approx(modulus * dm(mu, nu, 2).value, rel=1e-6)

    @given(st.floats(min_value=-3.0, max_value=3.0))
    @settings(max_examples=5, deadline=None)
    def test_translation_invariant(self, shift):
        mu, nu = symmetricPair(), threeAtoms()
        moved = dm(translate(mu, shift), translate(nu, shift), 2).value
        assert moved == pytest.approx(dm(mu, nu, 2).value, rel=1e-6)

    @given(st.floats(min_value=1e-3, max_value=1.0))
    @settings(max_examples=50, deadline=None)
    def test_ratio_grows_with_m_inside_the_unit_ball(self, r):
        mu, nu = symmetricPair(), threeAtoms()
        values = [ratio(mu, nu, m, r) for m in (2, 3, 4)]
        assert values[0] <= values[1] * (1 + 1e-9)
        assert values[1] <= values[2] * (1 + 1e-9)
