"""
The spectral family

    phi_delta(xi) = (P(xi) + |xi|^{m+2} sin(1/|xi|^m) e^{-delta/|xi|^2}) e^{-|xi|^{2m}}
    P(xi) = sum_{|gamma| <= m} M_gamma / gamma! (-i xi)^gamma

For delta > 0 phi_delta is the Fourier transform of a measure with moments
M; phi_0 is not twice differentiable at 0. The measures mu_j with transform
phi_{1/j} form a Cauchy sequence for d_m without a limit in the moment class.
"""

import logging

import numpy as np

from .enums import Branch, MeasureType
from .errors import FamilyError, MeasureSpecError, MomentOrderError
from .fourier import inverseFTGrid, richardsonDerivative
from .measure import (GridSpec, MomentSpec, SpectralMeasure, asPoints,
                      loadJSON)
from .metric import DEFAULT_TOL, dm
from .multiindex import parseMultiIndex

#envelope of phi_delta at the truncation radius, relative to its peak
ENVELOPE_CUTOFF = 1e-16

#(x_max, h) of the grid used to realize phi_delta as a density, per dimension
REALIZATION_WINDOWS = {
    1: (128.0, 0.125),
    2: (32.0, 0.25),
    3: (16.0, 0.5),
    }

logger = logging.getLogger("fmetric.Counterexample")

def _norms(xi):

    return np.sqrt(np.sum(xi * xi, axis=1))

def pEval(spec, xi):

    """
    P(xi) = sum_{|gamma| <= m} M_gamma / gamma! (-i)^|gamma| xi^gamma
    """

    pts, single = asPoints(xi, spec.d)
    values = np.zeros(pts.shape[0], dtype=complex)
    for gamma, value in spec.items():
        if value == 0:
            continue
        coef = value * (-1j) ** gamma.order() / gamma.factorial()
        values = values + coef * gamma.monomial(pts)
    if single:
        return complex(values[0])
    return values

def _oscillation(m, r):

    """
    r^{m+2} sin(1/r^m), 0 where r^m underflows.
    """

    out = np.zeros(r.shape)
    rm = r ** m
    live = rm > 0
    out[live] = r[live] ** (m + 2) * np.sin(1.0 / rm[live])
    return out

def _damping(delta, r):

    """
    e^{-delta/r^2}, 0 at r = 0.
    """

    out = np.zeros(r.shape)
    live = r > 0
    with np.errstate(over="ignore", under="ignore"):
        out[live] = np.exp(-delta / (r[live] * r[live]))
    return out

def _fDelta(delta, m, r):

    #exponential first: sin is only evaluated where the damping is non-zero
    damping = _damping(delta, r)
    out = np.zeros(r.shape)
    live = damping > 0
    out[live] = _oscillation(m, r[live]) * damping[live]
    return out

def fDeltaEval(delta, m, xi):

    """
    f_delta(xi) = |xi|^{m+2} sin(1/|xi|^m) e^{-delta/|xi|^2}, f_delta(0) = 0.

    xi is a single point or an (n, d) array (d is taken from the input).
    """

    if delta < 0:
        raise ValueError("delta must be >= 0, got %r" % delta)
    arr = np.asarray(xi, dtype=float)
    single = arr.ndim <= 1
    pts = arr.reshape(1, -1) if single else arr
    values = _fDelta(delta, m, _norms(pts))
    if single:
        return float(values[0])
    return values

class PhiDeltaFamily():

    """
    The member phi_delta of the counterexample family for the moment class
    given by spec (a MomentSpec, which fixes d and m).

    Instances are evaluators: calling one on an (n, d) array evaluates
    phi_delta. delta = 0 is allowed for evaluation and probes only.
    """

    logger = logging.getLogger("fmetric.Counterexample.PhiDelta")

    def __init__(self, spec, delta):

        if not isinstance(spec, MomentSpec):
            raise TypeError("spec must be of type MomentSpec, not '%s'" % type(spec).__name__)
        delta = float(delta)
        if not np.isfinite(delta) or delta < 0:
            raise FamilyError("delta must be a finite number >= 0, got %r" % delta)
        self.spec = spec
        self.delta = delta
        self._radius = None

    @property
    def d(self):

        return self.spec.d

    @property
    def m(self):

        return self.spec.m

    def __eq__(self, other):

        if not isinstance(other, PhiDeltaFamily):
            return NotImplemented
        return self.spec == other.spec and self.delta == other.delta

    def __repr__(self):

        return "PhiDeltaFamily(d=%d, m=%d, delta=%r)" % (self.d, self.m, self.delta)

    def __call__(self, xi):

        return self.evaluate(xi)

    def evaluate(self, xi):

        """
        phi_delta(xi); phi_delta(0) = M_0 exactly.
        """

        pts, single = asPoints(xi, self.d)
        r = _norms(pts)
        with np.errstate(under="ignore"):
            envelope = np.exp(-r ** (2 * self.m))
        values = (pEval(self.spec, pts) + _fDelta(self.delta, self.m, r)) * envelope
        if single:
            return complex(values[0])
        return values

    def difference(self, other, xi):

        """
        phi_delta(xi) - phi_other(xi) for a member of the same moment class,
        via the oscillating parts only so P cancels exactly.
        """

        if other.spec != self.spec:
            raise FamilyError("families belong to different moment classes")
        r = _norms(xi)
        gap = _damping(self.delta, r) - _damping(other.delta, r)
        out = np.zeros(r.shape)
        live = gap != 0
        with np.errstate(under="ignore"):
            out[live] = _oscillation(self.m, r[live]) * gap[live] * np.exp(-r[live] ** (2 * self.m))
        return out.astype(complex)

    def envelope(self, r):

        """
        (sum_gamma |M_gamma|/gamma! r^|gamma| + r^{m+2}) e^{-r^{2m}}, an upper
        bound of |phi_delta| on the sphere of radius r.
        """

        r = np.asarray(r, dtype=float)
        bound = np.zeros(r.shape)
        for gamma, value in self.spec.items():
            bound = bound + abs(value) / gamma.factorial() * r ** gamma.order()
        with np.errstate(under="ignore"):
            return (bound + r ** (self.m + 2)) * np.exp(-r ** (2 * self.m))

    def truncationRadius(self):

        """
        Smallest radius beyond the envelope's peak where the envelope falls
        below ENVELOPE_CUTOFF times the peak.
        """

        if self._radius is None:
            r = np.linspace(0.0, 12.0, 24001)
            env = self.envelope(r)
            peak = int(np.argmax(env))
            below = np.nonzero(env[peak:] < ENVELOPE_CUTOFF * env[peak])[0]
            self._radius = float(r[peak + below[0]]) if below.size else float(r[-1])
            self.logger.debug("truncation radius for m=%d: %.4g" % (self.m, self._radius))
        return self._radius

    def toJSON(self):

        return {
            "type": MeasureType.PHI_DELTA.value,
            "dim": self.d,
            "m": self.m,
            "delta": self.delta,
            "moments": self.spec.toJSON()
            }

    @classmethod
    def fromJSON(cls, d, delta=None):

        """
        Read a phi_delta spec; delta overrides (or replaces a missing)
        "delta" key.
        """

        spec = MomentSpec.fromJSON(d)
        if delta is None:
            if "delta" not in d:
                raise MeasureSpecError("delta", "missing")
            delta = d["delta"]
        if isinstance(delta, bool) or not isinstance(delta, (int, float)) or delta < 0:
            raise MeasureSpecError("delta", "must be a number >= 0")
        return cls(spec, delta)

def phiDeltaEval(fam, xi):

    return fam.evaluate(xi)

def loadMomentSpecJSON(path, m=None, dim=None):

    """
    Load the moment part of a phi_delta spec file (delta is not needed).
    """

    return MomentSpec.fromJSON(loadJSON(path), m=m, dim=dim)

class PhiDeltaMeasure(SpectralMeasure):

    """
    The measure mu_{1/delta} with Fourier transform phi_delta.

    realization holds the density obtained by the inverse transform on
    which the total variation bound was computed.
    """

    TYPE = MeasureType.PHI_DELTA

    logger = logging.getLogger("fmetric.Measure.PhiDelta")

    def __init__(self, family, tvBound, realization, extent):

        self.family = family
        self.realization = realization
        super().__init__(family.d, family.evaluate, tvBound, family.spec, extent=extent,
                         freqRadius=family.truncationRadius())

    def sameAs(self, other):

        return isinstance(other, PhiDeltaMeasure) and other.family == self.family

    def toJSON(self):

        return self.family.toJSON()

def makeMeasure(fam, window=None):

    """
    The measure mu_{1/delta} whose Fourier transform is phi_delta.

    The declared total variation bound is the trapezoidal integral of
    |density| of the inverse transform on the window (x_max, h)
    (default REALIZATION_WINDOWS[d]).
    Raises FamilyError for delta = 0: phi_0 is not the transform of any
    measure with finite moments of order m.
    """

    if fam.delta <= 0:
        raise FamilyError("phi_0 is not twice differentiable, there is no measure with this transform")

    xMax, h = window if window is not None else REALIZATION_WINDOWS[fam.d]
    grid = GridSpec.symmetric(fam.d, xMax, h)
    realization = inverseFTGrid(fam, grid)
    tv = realization.totalVariationBound()
    logger.debug("realized %s on [-%g, %g]^%d, total variation %.6g" % (repr(fam), xMax, xMax, fam.d, tv))
    return PhiDeltaMeasure(fam, tv, realization, xMax)

def cauchySequence(spec, j, window=None):

    """
    The j-th member mu_j (transform phi_{1/j}) of the Cauchy sequence.
    """

    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or j < 1:
        raise ValueError("sequence index must be an integer >= 1, got %r" % (j,))
    return makeMeasure(PhiDeltaFamily(spec, 1.0 / j), window)

class LipschitzReport():

    def __init__(self, estimate, bound, tol, metricEstimate):

        self.estimate = estimate
        self.bound = bound
        self.tol = tol
        self.metricEstimate = metricEstimate
        self.passed = bool(estimate <= bound + tol)

    def __repr__(self):

        return "LipschitzReport(estimate=%.10g, bound=%.10g, pass=%s)" % (self.estimate, self.bound, self.passed)

def verifyLipschitz(spec, delta1, delta2, tol=DEFAULT_TOL, search=None):

    """
    Estimate d_m(mu_{1/delta1}, mu_{1/delta2}) and compare it with the
    bound |delta1 - delta2|.
    """

    if delta1 <= 0 or delta2 <= 0:
        raise FamilyError("both deltas must be positive, got %r and %r" % (delta1, delta2))
    mu = makeMeasure(PhiDeltaFamily(spec, delta1))
    nu = makeMeasure(PhiDeltaFamily(spec, delta2))
    est = dm(mu, nu, spec.m, tol, search)
    return LipschitzReport(est.value, abs(delta1 - delta2), tol, est)

def gValues(rho, theta):

    """
    g(theta) = theta (1 - e^{-rho/theta})
    """

    theta = np.asarray(theta, dtype=float)
    return theta * -np.expm1(-rho / theta)

def gBoundCheck(rho, samples=1000):

    """
    True iff g(theta) <= rho at samples log spaced points of [1e-8, 1e8].
    """

    if rho <= 0:
        raise ValueError("rho must be positive, got %r" % rho)
    if samples < 1:
        raise ValueError("need at least one sample")
    theta = np.geomspace(1e-8, 1e8, samples)
    return bool(np.all(gValues(rho, theta) <= rho))

def lipschitzChain(fam1, fam2, xi):

    """
    The inequality chain behind the Lipschitz bound, per sample:

    |phi_1 - phi_2| / |xi|^m  <=  |xi|^2 (1 - e^{-rho/|xi|^2})  <=  rho

    Returns (ratio, middle, rho).
    """

    pts, _ = asPoints(xi, fam1.d)
    r = _norms(pts)
    if np.any(r == 0):
        raise ValueError("the chain is stated for xi != 0")
    rho = abs(fam1.delta - fam2.delta)
    ratio = np.abs(fam1.difference(fam2, pts)) / r ** fam1.m
    middle = gValues(rho, r * r) if rho > 0 else np.zeros(r.shape)
    return ratio, middle, rho

class MomentCheck():

    def __init__(self, beta, fdValue, expected):

        self.beta = beta
        self.fdValue = fdValue
        self.expected = expected
        self.error = abs(fdValue - expected)

    def __repr__(self):

        return "MomentCheck(beta=%s, fd=%r, expected=%r, error=%.3g)" % (self.beta, self.fdValue, self.expected, self.error)

def verifyMomentsAtZero(fam, beta, h=1e-2):

    """
    Compare a Richardson refined central difference of (D^beta phi_delta)(0)
    with (-i)^|beta| M_beta.
    """

    beta = parseMultiIndex(beta, fam.d)
    if fam.delta <= 0:
        raise FamilyError("moments are only defined for delta > 0")
    if beta.order() > fam.m:
        raise MomentOrderError("|beta| = %d exceeds m = %d" % (beta.order(), fam.m))
    if beta.order() == 0:
        fd = fam.evaluate(np.zeros(fam.d))
    else:
        fd = richardsonDerivative(fam, beta, h)
    return MomentCheck(beta, fd, (-1j) ** beta.order() * fam.spec[beta])

def secondQuotient(m, h):

    """
    (f'(h) - f'(0)) / h for f(x) = |x|^{m+2} sin(1/|x|^m), i.e.
    (m+2)|h|^m sin(1/|h|^m) - m cos(1/|h|^m).
    """

    h = np.asarray(h, dtype=float)
    u = 1.0 / np.abs(h) ** m
    return (m + 2) * np.abs(h) ** m * np.sin(u) - m * np.cos(u)

class SmoothnessTrace():

    """
    Result of phi0SmoothnessProbe().

    rows are (n, h, quotient, Branch) with branches interleaved per n;
    limitA / limitB are the subsequential limits extrapolated to h -> 0.
    """

    def __init__(self, m, rows, limitA, limitB):

        self.m = m
        self.rows = rows
        self.limitA = limitA
        self.limitB = limitB
        self.gap = abs(limitA - limitB)

    def branch(self, which):

        return [row for row in self.rows if row[3] == which]

    def gaps(self):

        """
        |quotient_A(n) - quotient_B(n)| for every n.
        """

        a = self.branch(Branch.A)
        b = self.branch(Branch.B)
        return [(ra[0], abs(ra[2] - rb[2])) for ra, rb in zip(a, b)]

def _extrapolate(hm, q):

    #q = L + c h^m along each branch
    if len(q) == 1:
        return float(q[0])
    return float(np.polyfit(hm, q, 1)[1])

def phi0SmoothnessProbe(m, nMax):

    """
    Difference quotients (f'(h) - f'(0)) / h of the axis restriction
    f(x) = |x|^{m+2} sin(1/|x|^m) of phi_0 along

        A: h_n  = (2 pi n + pi/2)^(-1/m)  (quotient -> 0)
        B: h'_n = (2 pi n)^(-1/m)         (quotient -> -m)

    for n = 1..nMax. The persistent gap m shows phi_0 is not C^2.
    """

    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ValueError("m must be an integer >= 2, got %r" % (m,))
    if isinstance(nMax, bool) or not isinstance(nMax, int) or nMax < 1:
        raise ValueError("nMax must be a positive integer, got %r" % (nMax,))

    n = np.arange(1, nMax + 1)
    hA = (2.0 * np.pi * n + np.pi / 2.0) ** (-1.0 / m)
    hB = (2.0 * np.pi * n) ** (-1.0 / m)
    qA = secondQuotient(m, hA)
    qB = secondQuotient(m, hB)

    rows = []
    for k in range(nMax):
        rows.append((int(n[k]), float(hA[k]), float(qA[k]), Branch.A))
        rows.append((int(n[k]), float(hB[k]), float(qB[k]), Branch.B))

    trace = SmoothnessTrace(m, rows, _extrapolate(hA ** m, qA), _extrapolate(hB ** m, qB))
    logger.debug("smoothness probe m=%d: limits %.6g, %.6g" % (m, trace.limitA, trace.limitB))
    return trace

def axisProfile(fam, x):

    """
    f(x) = e^{|x|^{2m}} phi_delta(x e_1) - P(x e_1) recovered from the
    family evaluator; equals f_delta(x e_1). Meant for |x| <= 1.
    """

    x = np.atleast_1d(np.asarray(x, dtype=float))
    pts = np.zeros((x.shape[0], fam.d))
    pts[:, 0] = x
    return np.exp(np.abs(x) ** (2 * fam.m)) * fam.evaluate(pts) - pEval(fam.spec, pts)

def pointwiseLimitTrace(spec, jList, xi):

    """
    max over the rows of xi of |phi_{1/j}(xi) - phi_0(xi)| for each j.
    The candidate limit of the Cauchy sequence is phi_0.
    """

    limit = PhiDeltaFamily(spec, 0.0)
    pts, _ = asPoints(xi, spec.d)
    trace = []
    for j in jList:
        member = PhiDeltaFamily(spec, 1.0 / j)
        trace.append((j, float(np.max(np.abs(member.difference(limit, pts))))))
    return trace
