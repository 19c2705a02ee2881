"""
The Fourier based metric

    d_m(mu, nu) = sup_{xi != 0} |mu^(xi) - nu^(xi)| / |xi|^m

computed as a supremum search in three regimes:

near  - geometric shells r = 1, 1/2, 1/4, ... down to R_MIN where the
        ratio has a removable singularity if the moments up to order m agree
mid   - radial grid (log spaced plus uniform) on [R_MIN, R_max] followed
        by a coordinate-wise golden-section polish of the best candidates
far   - |xi| > R_max, covered by the certified bound (B1 + B2) / R_max^m
        with R_max = ((B1 + B2) / tol)^(1/m)

The tail bound is certified, the interior search is best effort.
"""

import math
import logging

import numpy as np

from .enums import Regime, Verdict
from .errors import DimensionMismatchError, DivergentMetricError, MomentOrderError
from .measure import MOMENT_TOL, asPoints, atomSum, expKernel
from .multiindex import enumerateUpto

DEFAULT_TOL = 1e-6

R_MIN = 1e-6
R_NEAR = 1.0
NEAR_FACTOR = 0.5
ANGULAR_SAMPLES = {2: 64, 3: 256}
MID_SAMPLES = 2048

#uniform radial step is pi / (LINEAR_RESOLUTION * spatial extent)
LINEAR_RESOLUTION = 8.0
MAX_EVALUATIONS = 2**20
MAX_LINEAR_SAMPLES = 2**17

POLISH_CANDIDATES = 8
POLISH_SWEEPS = 2
FAR_SAMPLES = 64

#slope of log ratio vs log |xi| over the innermost shells
SLOPE_THRESHOLD = -0.5
SLOPE_SHELLS = 3
#ratios below this are rounding noise for the slope test
DIVERGENCE_FLOOR = 1e-6

#ratio noise allowed when mu^ - nu^ has to be formed by plain subtraction
NOISE_LEVEL = 1e-8

#terms of the power series for the Taylor remainder of exp(-i theta)
SERIES_TERMS = 30

INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2

logger = logging.getLogger("fmetric.Metric")

def remainderKernel(m):

    """
    R_m(theta) = exp(-i theta) - sum_{n <= m} (-i theta)^n / n!

    summed as a power series for |theta| < 1, where the direct formula
    cancels catastrophically.
    """

    def kernel(theta):

        out = np.empty(theta.shape, dtype=complex)
        small = np.abs(theta) < 1.0

        t = theta[small]
        term = (-1j * t) ** (m + 1) / math.factorial(m + 1)
        total = term.copy()
        for n in range(m + 2, m + 1 + SERIES_TERMS):
            term = term * (-1j * t) / n
            total += term
        out[small] = total

        t = theta[~small]
        poly = np.zeros(t.shape, dtype=complex)
        for n in range(m + 1):
            poly += (-1j * t) ** n / math.factorial(n)
        out[~small] = np.exp(-1j * t) - poly

        return out

    return kernel

def sphereDirections(d):

    """
    Deterministic unit directions: +-1 for d=1, equally spaced angles for
    d=2, a Fibonacci lattice for d=3.
    """

    if d == 1:
        return np.array([[1.0], [-1.0]])
    n = ANGULAR_SAMPLES[d]
    k = np.arange(n)
    if d == 2:
        angle = 2.0 * np.pi * k / n
        return np.stack([np.cos(angle), np.sin(angle)], axis=1)
    z = 1.0 - (2.0 * k + 1.0) / n
    rho = np.sqrt(1.0 - z * z)
    angle = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([rho * np.cos(angle), rho * np.sin(angle), z], axis=1)

def goldenSectionMax(f, a, b, tol=1e-10):

    """
    Golden-section search for a maximum of f on [a, b].

    f is assumed unimodal on the interval; returns the midpoint of the
    final bracket [c, d] with d - c <= tol.
    """

    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return (a + b) / 2.0

    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for k in range(n - 1):
        if yc > yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)

    if yc > yd:
        return (a + d) / 2.0
    else:
        return (c + b) / 2.0

class FourierDifference():

    """
    Evaluates mu^(xi) - nu^(xi) in the most accurate way available:

    zero   - the two measures are the same representation
    family - both are phi_delta members of one moment class, the closed
             form difference of the oscillating parts is used
    space  - both have atoms (discrete or grid); for |xi| <= 1 the
             difference is sum_k w_k R_m(x_k . xi) plus the Taylor polynomial
             of the moment differences that exceed momentTol
    plain  - anything else, plain subtraction; only trusted for |xi| above
             the radius where rounding noise divided by |xi|^m stays below
             NOISE_LEVEL
    """

    logger = logging.getLogger("fmetric.Metric.Difference")

    def __init__(self, mu, nu, m, momentTol=MOMENT_TOL):

        if mu.dim != nu.dim:
            raise DimensionMismatchError("measures live in R^%d and R^%d" % (mu.dim, nu.dim))

        self.mu = mu
        self.nu = nu
        self.m = m
        self.dim = mu.dim
        self.momentTol = momentTol
        self.trustedRadius = 0.0
        self.mismatch = []

        famMu = getattr(mu, "family", None)
        famNu = getattr(nu, "family", None)

        if mu.sameAs(nu):
            self.mode = "zero"
        elif famMu is not None and famNu is not None and famMu.spec == famNu.spec:
            self.mode = "family"
        elif mu.SPACE_SIDE and nu.SPACE_SIDE:
            self.mode = "space"
            self._setupAtoms()
        else:
            self.mode = "plain"
            noise = 8.0 * np.finfo(float).eps * max(mu.totalVariationBound() + nu.totalVariationBound(), 1e-300)
            self.trustedRadius = (noise / NOISE_LEVEL) ** (1.0 / m)

        self.logger.debug("difference mode '%s', trusted down to |xi| = %.3g" % (self.mode, self.trustedRadius))

    def _setupAtoms(self):

        p1, w1 = self.mu.atoms()
        p2, w2 = self.nu.atoms()
        points = np.vstack([p1, p2])
        weights = np.concatenate([w1, -w2])

        #merge coincident atoms so common mass cancels exactly
        unique, inverse = np.unique(points, axis=0, return_inverse=True)
        merged = np.zeros(unique.shape[0], dtype=complex)
        np.add.at(merged, inverse.reshape(-1), weights)
        keep = merged != 0
        self.points = unique[keep]
        self.weights = merged[keep]
        self.kernel = remainderKernel(self.m)

        for beta in enumerateUpto(self.dim, self.m):
            delta = complex(np.sum(self.weights * beta.monomial(self.points))) if self.points.shape[0] else 0j
            if abs(delta) > self.momentTol:
                coef = delta * (-1j) ** beta.order() / beta.factorial()
                self.mismatch.append((beta, coef))

    def evaluate(self, xi):

        """
        mu^(xi) - nu^(xi) for an (n, d) array xi.
        """

        if self.mode == "zero":
            return np.zeros(xi.shape[0], dtype=complex)
        if self.mode == "family":
            return self.mu.family.difference(self.nu.family, xi)
        if self.mode == "plain":
            return np.asarray(self.mu.ftEval(xi), dtype=complex) - np.asarray(self.nu.ftEval(xi), dtype=complex)

        out = np.empty(xi.shape[0], dtype=complex)
        near = np.linalg.norm(xi, axis=1) <= R_NEAR
        if np.any(near):
            block = xi[near]
            values = atomSum(self.points, self.weights, block, self.kernel)
            for beta, coef in self.mismatch:
                values = values + coef * beta.monomial(block)
            out[near] = values
        if np.any(~near):
            out[~near] = atomSum(self.points, self.weights, xi[~near], expKernel)
        return out

    def ratios(self, xi):

        """
        |mu^(xi) - nu^(xi)| / |xi|^m for an (n, d) array of non-zero xi.
        """

        r = np.linalg.norm(xi, axis=1)
        return np.abs(self.evaluate(xi)) / r ** self.m

def ratio(mu, nu, m, xi):

    """
    |mu^(xi) - nu^(xi)| / |xi|^m at a single xi != 0 (or an (n, d) array).
    Every non-zero moment difference is kept, however small.
    """

    if mu.dim != nu.dim:
        raise DimensionMismatchError("measures live in R^%d and R^%d" % (mu.dim, nu.dim))
    pts, single = asPoints(xi, mu.dim)
    if np.any(np.linalg.norm(pts, axis=1) == 0):
        raise ValueError("the ratio is not defined at xi = 0")
    values = FourierDifference(mu, nu, m, momentTol=0.0).ratios(pts)
    if single:
        return float(values[0])
    return values

class DivergenceVerdict():

    """
    Result of divergenceCheck(). beta is the lowest order mismatched
    multi-index for divergent verdicts, None otherwise.
    """

    def __init__(self, verdict, beta=None, discrepancy=0.0):

        self.verdict = verdict
        self.beta = beta
        self.discrepancy = discrepancy

    @property
    def finite(self):

        return self.verdict == Verdict.FINITE

    def __repr__(self):

        if self.finite:
            return "DivergenceVerdict(finite)"
        return "DivergenceVerdict(divergent beta=%s, gap=%.3g)" % (self.beta, self.discrepancy)

def divergenceCheck(mu, nu, m, tol=MOMENT_TOL):

    """
    Compare all moments up to order m; divergent(beta) for the first
    (graded-lexicographic, hence lowest order) mismatch, finite otherwise.

    Raises MomentOrderError if a measure can't provide moments of order m.
    """

    if mu.dim != nu.dim:
        raise DimensionMismatchError("measures live in R^%d and R^%d" % (mu.dim, nu.dim))
    if mu.sameAs(nu):
        return DivergenceVerdict(Verdict.FINITE)
    for beta in enumerateUpto(mu.dim, m):
        gap = abs(mu.moment(beta) - nu.moment(beta))
        if gap > tol:
            logger.debug("moment %s differs by %.3g" % (beta, gap))
            return DivergenceVerdict(Verdict.DIVERGENT, beta, gap)
    return DivergenceVerdict(Verdict.FINITE)

class MetricEstimate():

    """
    The outcome of dm().

    value        - largest ratio found, attained at argmax
    lowerBound   - largest ratio on the raw search grid (before polishing)
    tailBound    - certified bound (B1 + B2) / R_max^m for |xi| > R_max
    argmax       - frequency at which value is attained
    regimeMax    - maxima found per Regime (far: observed beyond R_max)
    peanoConstant   - observed sup over 0 < |xi| <= 1
    finitenessBound - peanoConstant + B1 + B2
    certified    - tailBound <= tol
    """

    def __init__(self, value, lowerBound, tailBound, argmax, regimeMax, peanoConstant,
                 finitenessBound, rMax, tol, m):

        self.value = value
        self.lowerBound = lowerBound
        self.tailBound = tailBound
        self.argmax = argmax
        self.regimeMax = regimeMax
        self.peanoConstant = peanoConstant
        self.finitenessBound = finitenessBound
        self.rMax = rMax
        self.tol = tol
        self.m = m
        self.certified = bool(tailBound <= tol)

    @staticmethod
    def header(d):

        return (["value", "lower_bound", "tail_bound"]
                + ["argmax_%d" % j for j in range(d)]
                + ["near_max", "mid_max", "far_max", "peano_constant", "certified"])

    def toRow(self):

        return ([self.value, self.lowerBound, self.tailBound] + [float(c) for c in self.argmax]
                + [self.regimeMax[Regime.NEAR], self.regimeMax[Regime.MID], self.regimeMax[Regime.FAR],
                   self.peanoConstant, self.certified])

    def __repr__(self):

        return "MetricEstimate(value=%.10g, argmax=%s, tail=%.3g)" % (self.value, np.array2string(self.argmax), self.tailBound)

class SupremumSearch():

    """
    Search settings for dm(). Every constant of this module that
    steers the search can be overridden through the constructor.
    """

    logger = logging.getLogger("fmetric.Metric.Search")

    def __init__(self, rMin=R_MIN, nearFactor=NEAR_FACTOR, midSamples=MID_SAMPLES,
                 linearResolution=LINEAR_RESOLUTION, maxEvaluations=MAX_EVALUATIONS,
                 candidates=POLISH_CANDIDATES, sweeps=POLISH_SWEEPS, farSamples=FAR_SAMPLES,
                 momentTol=MOMENT_TOL):

        if not 0 < nearFactor < 1:
            raise ValueError("nearFactor must lie in (0, 1)")
        if rMin <= 0 or rMin >= R_NEAR:
            raise ValueError("rMin must lie in (0, %g)" % R_NEAR)

        self.rMin = rMin
        self.nearFactor = nearFactor
        self.midSamples = midSamples
        self.linearResolution = linearResolution
        self.maxEvaluations = maxEvaluations
        self.candidates = candidates
        self.sweeps = sweeps
        self.farSamples = farSamples
        self.momentTol = momentTol

    def _nearRadii(self, rLow):

        radii = []
        r = R_NEAR
        while r > rLow:
            radii.append(r)
            r *= self.nearFactor
        radii.append(rLow)
        return np.array(radii)

    def _linearRadii(self, mu, nu, diff, rLow, rMax, nDir):

        extent = max(mu.spatialExtent(), nu.spatialExtent())
        step = np.pi / (self.linearResolution * extent)

        top = rMax
        if diff.mode == "family":
            top = min(rMax, mu.family.truncationRadius())
        else:
            radii = [mu.frequencyRadius(), nu.frequencyRadius()]
            if all(r is not None for r in radii):
                top = min(rMax, max(radii))

        count = int(np.ceil((top - rLow) / step)) + 1
        cap = max(256, min(MAX_LINEAR_SAMPLES, self.maxEvaluations // nDir))
        if count > cap:
            self.logger.debug("uniform radial grid capped at %d samples (wanted %d)" % (cap, count))
            count = cap
        return np.linspace(rLow, top, count)

    def _evaluateShells(self, diff, radii, directions):

        """
        Ratios on all shells, shape (len(radii), len(directions)).
        """

        nDir = directions.shape[0]
        out = np.empty((radii.shape[0], nDir))
        rows = max(1, self.maxEvaluations // (4 * nDir))
        for start in range(0, radii.shape[0], rows):
            block = radii[start:start + rows]
            xi = (block[:, None, None] * directions[None, :, :]).reshape(-1, diff.dim)
            out[start:start + rows] = diff.ratios(xi).reshape(block.shape[0], nDir)
        return out

    def _divergence(self, diff, radii, values, directions, beta=None):

        """
        Build the DivergentMetricError for a blow up seen on the innermost shells.
        """

        inner = values[-SLOPE_SHELLS:].max(axis=1)
        logr = np.log(radii[-SLOPE_SHELLS:])
        if np.all(inner > 0):
            slope = float(np.polyfit(logr, np.log(inner), 1)[0])
        else:
            slope = float("nan")
        if beta is not None:
            slope = float(beta.order() - diff.m)
        direction = directions[int(np.argmax(values[-1]))]
        return DivergentMetricError(beta, direction, slope)

    def _polish(self, diff, xi0, step, rLow):

        """
        Coordinate-wise golden-section ascent from xi0 within +-step.
        """

        def objective(xi):
            if np.linalg.norm(xi) < rLow:
                return 0.0
            return float(diff.ratios(xi.reshape(1, -1))[0])

        best = xi0.copy()
        bestValue = objective(best)
        s = step
        for sweep in range(self.sweeps):
            for j in range(diff.dim):
                def along(t):
                    trial = best.copy()
                    trial[j] += t
                    return objective(trial)
                t = goldenSectionMax(along, -s, s, tol=1e-10 * max(1.0, float(np.linalg.norm(best))))
                value = along(t)
                if value > bestValue:
                    best[j] += t
                    bestValue = value
            s *= 0.5
        return best

    def run(self, mu, nu, m, tol=DEFAULT_TOL):

        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise ValueError("m must be an integer >= 2, got %r" % (m,))
        if tol <= 0:
            raise ValueError("tol must be positive, got %r" % tol)
        if mu.dim != nu.dim:
            raise DimensionMismatchError("measures live in R^%d and R^%d" % (mu.dim, nu.dim))

        d = mu.dim
        directions = sphereDirections(d)
        diff = FourierDifference(mu, nu, m, self.momentTol)
        rLow = max(self.rMin, diff.trustedRadius)
        nearRadii = self._nearRadii(rLow)

        try:
            verdict = divergenceCheck(mu, nu, m, self.momentTol)
        except MomentOrderError as e:
            self.logger.warning("no moment pre-check possible (%s), relying on the near-origin growth test" % str(e))
            verdict = None

        nearValues = self._evaluateShells(diff, nearRadii, directions)
        if verdict is not None and not verdict.finite:
            raise self._divergence(diff, nearRadii, nearValues, directions, verdict.beta)

        inner = nearValues[-SLOPE_SHELLS:].max(axis=1)
        if inner[-1] > DIVERGENCE_FLOOR and np.all(inner > 0):
            slope = np.polyfit(np.log(nearRadii[-SLOPE_SHELLS:]), np.log(inner), 1)[0]
            if slope <= SLOPE_THRESHOLD:
                self.logger.debug("ratio grows like |xi|^%.3g near the origin" % slope)
                raise self._divergence(diff, nearRadii, nearValues, directions)

        b = mu.totalVariationBound() + nu.totalVariationBound()
        #rounded up so that b / rMax^m <= tol holds in floating point
        rMax = max(R_NEAR, (b / tol) ** (1.0 / m) * (1 + 1e-12)) if b > 0 else R_NEAR
        tail = b / rMax ** m
        self.logger.debug("B1 + B2 = %.6g, R_max = %.6g, tail bound %.3g" % (b, rMax, tail))

        midRadii = np.union1d(np.geomspace(rLow, rMax, self.midSamples),
                              self._linearRadii(mu, nu, diff, rLow, rMax, directions.shape[0]))
        midRadii = midRadii[midRadii > R_NEAR]
        radii = np.concatenate([nearRadii[::-1], midRadii])
        values = np.concatenate([nearValues[::-1], self._evaluateShells(diff, midRadii, directions)])
        self.logger.debug("sampled %d radii x %d directions" % (radii.shape[0], directions.shape[0]))

        farRadii = np.geomspace(rMax * (1 + 1e-9), 10.0 * rMax, self.farSamples)
        farValues = self._evaluateShells(diff, farRadii, directions)

        #candidates: radial local maxima, best first, ties broken by position
        padded = np.pad(values, ((1, 1), (0, 0)), constant_values=-np.inf)
        local = (values >= padded[:-2]) & (values >= padded[2:])
        idx = np.argwhere(local)
        order = sorted(range(idx.shape[0]), key=lambda k: (-values[idx[k][0], idx[k][1]], idx[k][0], idx[k][1]))
        angular = 2.0 * np.pi / directions.shape[0] if d > 1 else 0.0

        points = []
        gridBest = np.unravel_index(int(np.argmax(values)), values.shape)
        gridBestXi = radii[gridBest[0]] * directions[gridBest[1]]
        points.append(gridBestXi)
        for k in order[:self.candidates]:
            i, j = idx[k]
            lo = radii[max(i - 1, 0)]
            hi = radii[min(i + 1, radii.shape[0] - 1)]
            step = max(hi - radii[i], radii[i] - lo, radii[i] * angular)
            if step <= 0:
                step = radii[i] * 1e-3
            points.append(self._polish(diff, radii[i] * directions[j], step, rLow))

        #single point re-evaluation so that value is reproducible at argmax
        scored = []
        for xi in points:
            scored.append((float(diff.ratios(xi.reshape(1, -1))[0]), xi))
        lowerBound = scored[0][0]
        scored.sort(key=lambda item: (-item[0], tuple(item[1])))
        value, argmax = scored[0]

        norms = np.linalg.norm(np.array([xi for _, xi in scored]), axis=1)
        inBall = [v for (v, _), r in zip(scored, norms) if r <= R_NEAR]
        nearMax = float(values[radii <= R_NEAR].max())
        peano = max([nearMax] + inBall)
        midMax = float(values[radii > R_NEAR].max()) if np.any(radii > R_NEAR) else 0.0
        outside = [v for (v, _), r in zip(scored, norms) if r > R_NEAR]
        if outside:
            midMax = max(midMax, max(outside))

        regimeMax = {
            Regime.NEAR: nearMax,
            Regime.MID: midMax,
            Regime.FAR: float(farValues.max()),
            }

        estimate = MetricEstimate(value, lowerBound, tail, argmax, regimeMax, peano, peano + b, rMax, tol, m)
        self.logger.debug("d_%d = %s" % (m, repr(estimate)))
        return estimate

def dm(mu, nu, m, tol=DEFAULT_TOL, search=None):

    """
    Estimate d_m(mu, nu) = sup_{xi != 0} |mu^ - nu^| / |xi|^m.

    Raises DivergentMetricError when the ratio blows up at the origin
    (moments up to order m don't match).
    Returns a MetricEstimate.
    """

    if search is None:
        search = SupremumSearch()
    return search.run(mu, nu, m, tol)

class AxiomsReport():

    """
    Outcome of metricAxiomsProbe(). distances[i][j] = dm(measures[i], measures[j]).
    """

    def __init__(self, distances, symmetryGap, minDistance, triangleExcess, identityViolations, tol):

        self.distances = distances
        self.symmetryGap = symmetryGap
        self.minDistance = minDistance
        self.triangleExcess = triangleExcess
        self.identityViolations = identityViolations
        self.tol = tol

    @property
    def symmetric(self):

        return self.symmetryGap <= self.tol

    @property
    def nonNegative(self):

        return self.minDistance >= 0

    @property
    def triangle(self):

        return self.triangleExcess <= 3 * self.tol

    @property
    def identity(self):

        return not self.identityViolations

    @property
    def passed(self):

        return self.symmetric and self.nonNegative and self.triangle and self.identity

    def __repr__(self):

        return ("AxiomsReport(symmetry gap %.3g, min %.3g, triangle excess %.3g, %d identity violations)"
                % (self.symmetryGap, self.minDistance, self.triangleExcess, len(self.identityViolations)))

def metricAxiomsProbe(measures, m, tol=DEFAULT_TOL, search=None):

    """
    Check symmetry, non-negativity, the triangle inequality (within 3 tol)
    and dm(mu, nu) = 0 <=> mu and nu are the same representation, on all
    pairs and triples of measures from one moment class.
    Violations are reported, not raised.
    """

    n = len(measures)
    distances = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            distances[i, j] = dm(measures[i], measures[j], m, tol, search).value

    symmetryGap = float(np.max(np.abs(distances - distances.T))) if n else 0.0
    minDistance = float(np.min(distances)) if n else 0.0

    triangleExcess = -np.inf
    for i in range(n):
        for j in range(n):
            for k in range(n):
                triangleExcess = max(triangleExcess, distances[i, k] - distances[i, j] - distances[j, k])
    triangleExcess = float(triangleExcess) if n else 0.0

    violations = []
    for i in range(n):
        for j in range(n):
            if (distances[i, j] <= tol) != measures[i].sameAs(measures[j]):
                violations.append((i, j))

    report = AxiomsReport(distances, symmetryGap, minDistance, triangleExcess, violations, tol)
    logger.debug(repr(report))
    return report
