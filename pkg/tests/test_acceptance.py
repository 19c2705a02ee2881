"""
End to end checks of the metric and the counterexample family:
Lipschitz bound, Cauchy property, non-smoothness of the limit, moments of
the family, realization by inverse transform, metric value, metric axioms,
divergence detection and soundness of the tail bound.
"""

import itertools

import numpy as np
import pytest

from fmetric.counterexample import (PhiDeltaFamily, cauchySequence, makeMeasure, phi0SmoothnessProbe,
                                    verifyLipschitz, verifyMomentsAtZero)
from fmetric.enums import Branch
from fmetric.fourier import inverseFTGrid
from fmetric.measure import DiscreteMeasure, GridSpec, MomentSpec, momentsMatch
from fmetric.metric import divergenceCheck, dm, metricAxiomsProbe, ratio
from fmetric.multiindex import MultiIndex, enumerateUpto


def standardMoments():
    return MomentSpec(1, 2, {(0,): 1.0, (1,): 0.0, (2,): 1.0})


def randomMoments(rng, d, m):
    values = {}
    for beta in enumerateUpto(d, m):
        values[beta] = 2.0 * rng.uniform(0, 1) * np.exp(2j * np.pi * rng.uniform(0, 1))
    return MomentSpec(d, m, values)


def binomialWeights(k):
    weights = [1.0]
    for i in range(k):
        weights.append(-weights[-1] * (k - i) / (i + 1))
    return np.array(weights)


def differenceMeasure(x, h, k, amplitude, axis=0, d=1):
    """
    amplitude * sum_i (-1)^i C(k, i) delta_{x + i h e_axis}: all moments of
    order < k vanish, the order k moment along the axis does not.
    """
    points = np.tile(np.asarray(x, dtype=float).reshape(1, d), (k + 1, 1))
    points[:, axis] += h * np.arange(k + 1)
    return DiscreteMeasure(points, amplitude * binomialWeights(k))


class TestLipschitzBound:

    @pytest.mark.parametrize("d1, d2", [(1.0, 0.5), (0.5, 0.25), (0.2, 0.1), (0.05, 0.04)])
    def test_pairs(self, d1, d2):
        report = verifyLipschitz(standardMoments(), d1, d2)
        assert report.estimate <= abs(d1 - d2) + 1e-5
        assert report.passed


class TestCauchyProperty:

    def test_pairwise_distances(self):
        js = [1, 2, 4, 8, 16]
        measures = {j: cauchySequence(standardMoments(), j) for j in js}
        distances = {}
        for j, k in itertools.combinations(js, 2):
            distances[(j, k)] = dm(measures[j], measures[k], 2, 1e-6).value
            assert distances[(j, k)] <= abs(1.0 / j - 1.0 / k) + 1e-5

        tails = []
        for start in range(len(js) - 1):
            tail = js[start:]
            tails.append(max(distances[(j, k)] for j, k in itertools.combinations(tail, 2)))
        assert all(b <= a for a, b in zip(tails, tails[1:]))
        assert tails[-1] < tails[0]


class TestNonConvergenceWitness:

    def test_probe(self):
        trace = phi0SmoothnessProbe(2, 50)
        assert trace.limitA == pytest.approx(0.0, abs=1e-3)
        assert trace.limitB == pytest.approx(-2.0, abs=1e-3)
        assert all(gap > 1.9 for n, gap in trace.gaps() if n >= 5)
        assert len(trace.branch(Branch.A)) == 50


class TestFamilyMoments:

    @pytest.mark.parametrize("d, m, delta", [(d, m, delta) for d in (1, 2) for m in (2, 3) for delta in (1.0, 0.1)])
    def test_derivatives_at_zero(self, d, m, delta):
        rng = np.random.RandomState(1000 * d + 10 * m + int(delta * 10))
        fam = PhiDeltaFamily(randomMoments(rng, d, m), delta)
        for beta in enumerateUpto(d, m):
            check = verifyMomentsAtZero(fam, beta, h=1e-2)
            assert check.error < 1e-4, repr(check)


class TestRealization:

    def test_inverse_transform_of_the_family(self):
        fam = PhiDeltaFamily(standardMoments(), 1.0)
        grid = GridSpec.symmetric(1, 128.0, 0.125)
        density = inverseFTGrid(fam, grid)
        assert momentsMatch(density, standardMoments(), 1e-4)

        xi = np.linspace(-2.0, 2.0, 20).reshape(-1, 1)
        assert np.max(np.abs(density.ftEval(xi) - fam.evaluate(xi))) < 1e-6

    def test_measure_keeps_its_realization(self):
        mu = makeMeasure(PhiDeltaFamily(standardMoments(), 1.0))
        assert momentsMatch(mu.realization, standardMoments(), 1e-4)
        assert mu.totalVariationBound() == mu.realization.totalVariationBound()


class TestMetricValue:

    def test_against_dense_grid(self):
        mu = DiscreteMeasure([[-1.0], [1.0]], [0.5, 0.5])
        nu = DiscreteMeasure([[-2.0], [0.0], [2.0]], [0.125, 0.75, 0.125])
        xi = np.arange(1, 500001) * 1e-4
        expected = np.max((1 - np.cos(xi)) ** 2 / (2 * xi * xi))
        assert dm(mu, nu, 2, 1e-6).value == pytest.approx(expected, abs=1e-5)


class TestMetricAxioms:

    def test_random_triples(self):
        rng = np.random.RandomState(7)
        for trial in range(20):
            base = DiscreteMeasure(rng.uniform(-2, 2, (3, 1)), rng.normal(size=3) + 1j * rng.normal(size=3))
            triple = []
            for i in range(3):
                amplitude = rng.uniform(0.05, 0.5) * np.exp(2j * np.pi * rng.uniform())
                bump = differenceMeasure([rng.uniform(-2, 2)], rng.uniform(0.2, 0.8), 3, amplitude)
                triple.append(base.add(bump))
            report = metricAxiomsProbe(triple, 2, 1e-6)
            assert report.minDistance >= 0
            assert report.symmetryGap <= 1e-9
            assert report.triangleExcess <= 3e-6
            assert report.identity


class TestDivergenceDetection:

    @pytest.mark.parametrize("seed", range(10))
    def test_lowest_mismatch(self, seed):
        rng = np.random.RandomState(seed)
        d = 1 + seed % 2
        m = 2 + seed % 3
        k = int(rng.randint(0, m + 1))
        base = DiscreteMeasure(rng.uniform(-1, 1, (4, d)), rng.normal(size=4))
        perturbation = differenceMeasure(rng.uniform(-1, 1, d), rng.uniform(0.3, 0.7), k, rng.uniform(1.0, 2.0), d=d)
        verdict = divergenceCheck(base, base.add(perturbation), m)
        expected = [0] * d
        expected[0] = k
        assert not verdict.finite
        assert verdict.beta == MultiIndex(expected)


class TestTailBound:

    def test_beyond_r_max(self):
        rng = np.random.RandomState(3)
        mu = DiscreteMeasure([[-1.0], [1.0]], [0.5, 0.5])
        nu = DiscreteMeasure([[-2.0], [0.0], [2.0]], [0.125, 0.75, 0.125])
        estimate = dm(mu, nu, 2, 1e-6)
        r = estimate.rMax * rng.uniform(1.0, 10.0, 100)
        xi = (r * rng.choice([-1.0, 1.0], 100)).reshape(-1, 1)
        assert np.all(ratio(mu, nu, 2, xi) <= estimate.tailBound + 1e-12)
        assert np.all(r > estimate.rMax)
