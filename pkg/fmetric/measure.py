"""
Complex-valued finite Borel measures on R^d.

Three kinds of representation are available:

DiscreteMeasure - finitely many atoms x_k with complex weights w_k
GridDensity     - a complex density sampled on a rectangular grid,
                  integrals by the trapezoidal rule
SpectralMeasure - a closed form Fourier transform together with a declared
                  total variation bound and declared moments

The JSON measure spec understood by parseMeasure() is documented in
README.md.
"""

import json
import logging
import pathlib

import numpy as np
from scipy.integrate import trapezoid

from .enums import MeasureType
from .errors import (DimensionMismatchError, MomentOrderError, MeasureSpecError,
                     SpectralMeasureError)
from .multiindex import MultiIndex, enumerateUpto, parseMultiIndex

SUPPORTED_DIMS = (1, 2, 3)

#moments_match default, absolute
MOMENT_TOL = 1e-9

#highest moment/derivative order for space side representations, 21! overflows int64
MAX_MOMENT_ORDER = 20

#rows of frequencies evaluated per block in atomSum()
CHUNK_SIZE = 4096

logger = logging.getLogger("fmetric.Measure")

def asPoints(xi, d):

    """
    Normalize frequency/space input.

    Returns (points, single) where points has shape (n, d).
    A scalar (d = 1 only) or a vector of shape (d,) is a single point,
    an array of shape (n, d) are n points.
    """

    arr = np.asarray(xi, dtype=float)
    if arr.ndim == 0:
        if d != 1:
            raise DimensionMismatchError("scalar point given for dimension %d" % d)
        return arr.reshape(1, 1), True
    if arr.ndim == 1:
        if arr.shape[0] != d:
            raise DimensionMismatchError("point has dimension %d, expected %d" % (arr.shape[0], d))
        return arr.reshape(1, d), True
    if arr.ndim == 2 and arr.shape[1] == d:
        return arr, False
    raise DimensionMismatchError("points of shape %s do not live in R^%d" % (str(arr.shape), d))

def _unwrap(values, single):

    if single:
        return complex(values[0])
    return values

def expKernel(theta):

    return np.exp(-1j * theta)

def atomSum(points, weights, xi, kernel=expKernel):

    """
    Evaluate sum_k w_k kernel(x_k . xi) for every row of xi.

    points has shape (K, d), weights (K,), xi (n, d). The default kernel
    gives the Fourier transform of the discrete measure sum_k w_k delta_{x_k}.
    Frequencies are processed in blocks of CHUNK_SIZE rows.
    """

    out = np.empty(xi.shape[0], dtype=complex)
    for start in range(0, xi.shape[0], CHUNK_SIZE):
        block = xi[start:start + CHUNK_SIZE]
        theta = block @ points.T
        out[start:start + CHUNK_SIZE] = kernel(theta) @ weights
    return out

def parseComplex(value, field):

    """
    Parse a complex number from its JSON form [re, im] (plain numbers are
    accepted as real values).
    """

    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            pass
    raise MeasureSpecError(field, "expected a complex number [re, im], got %r" % (value,))

def complexToJSON(z):

    return [float(z.real), float(z.imag)]

def _field(d, name, path=None):

    if not isinstance(d, dict):
        raise MeasureSpecError(path or name, "expected a JSON object")
    if name not in d:
        raise MeasureSpecError(path or name, "missing")
    return d[name]

def _vector(value, field, d=None):

    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise MeasureSpecError(field, "expected a list of numbers")
    if arr.ndim != 1 or (d is not None and arr.shape[0] != d):
        raise MeasureSpecError(field, "expected a list of %s numbers" % (d if d is not None else "some"))
    if not np.all(np.isfinite(arr)):
        raise MeasureSpecError(field, "entries must be finite")
    return arr

def _dim(d):

    dim = _field(d, "dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim not in SUPPORTED_DIMS:
        raise MeasureSpecError("dim", "must be one of %s" % str(SUPPORTED_DIMS))
    return dim

class MomentSpec():

    """
    A prescribed moment family M = {M_beta}_{|beta| <= m} with complex values.

    values maps multi-indices (MultiIndex or integer sequences) to complex
    numbers and must contain every beta with |beta| <= m, unless fillZeros
    is set, in which case missing entries are taken to be 0.
    """

    def __init__(self, d, m, values, fillZeros=False):

        if d not in SUPPORTED_DIMS:
            raise ValueError("dimension must be one of %s, got %s" % (str(SUPPORTED_DIMS), d))
        if m < 2:
            raise ValueError("moment order m must be >= 2, got %d" % m)

        self.d = d
        self.m = m
        given = {}
        for beta, value in dict(values).items():
            beta = parseMultiIndex(beta, d)
            if beta.order() > m:
                raise ValueError("moment %s exceeds order m=%d" % (beta, m))
            given[beta] = complex(value)

        self._values = {}
        for beta in enumerateUpto(d, m):
            if beta in given:
                self._values[beta] = given[beta]
            elif fillZeros:
                self._values[beta] = 0j
            else:
                raise ValueError("moment %s is missing from the moment spec" % beta)

    def __getitem__(self, beta):

        beta = parseMultiIndex(beta, self.d)
        if beta.order() > self.m:
            raise MomentOrderError("moment %s requested but only moments up to order %d are declared" % (beta, self.m))
        return self._values[beta]

    def __eq__(self, other):

        if not isinstance(other, MomentSpec):
            return NotImplemented
        return self.d == other.d and self.m == other.m and self._values == other._values

    def __repr__(self):

        return "MomentSpec(d=%d, m=%d)" % (self.d, self.m)

    def items(self):

        """
        (beta, M_beta) pairs in graded-lexicographic order.
        """

        return list(self._values.items())

    def toJSON(self):

        return [{"beta": beta.toJSON(), "value": complexToJSON(v)} for beta, v in self._values.items()]

    @classmethod
    def fromJSON(cls, d, m=None, dim=None):

        """
        Read the moment part of a phi_delta spec:
        {"dim": 1, "m": 2, "moments": [{"beta": [0], "value": [1.0, 0.0]}, ...]}
        m and dim override the values in the file if given.
        """

        dim = dim if dim is not None else _dim(d)
        if m is None:
            m = _field(d, "m")
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise MeasureSpecError("m", "must be an integer >= 2")
        entries = _field(d, "moments")
        if not isinstance(entries, list):
            raise MeasureSpecError("moments", "expected a list")

        values = {}
        for i, entry in enumerate(entries):
            field = "moments[%d]" % i
            try:
                beta = parseMultiIndex(_field(entry, "beta", field + ".beta"), dim)
            except MeasureSpecError:
                raise
            except (TypeError, ValueError) as e:
                raise MeasureSpecError(field + ".beta", str(e))
            values[beta] = parseComplex(_field(entry, "value", field + ".value"), field + ".value")

        try:
            return cls(dim, m, values)
        except ValueError as e:
            raise MeasureSpecError("moments", str(e))

class MomentReport():

    """
    Result of momentsMatch().

    matched is True iff every discrepancy is <= tol, worstBeta is the
    multi-index with the largest discrepancy (first one in graded-lex
    order on ties) and table holds (beta, moment, prescribed) rows, with
    moment None where mu can't provide it.
    """

    def __init__(self, matched, worstBeta, discrepancy, tol, table):

        self.matched = matched
        self.worstBeta = worstBeta
        self.discrepancy = discrepancy
        self.tol = tol
        self.table = table

    def __bool__(self):

        return self.matched

    def __repr__(self):

        return "MomentReport(matched=%s, worst=%s, discrepancy=%.3g)" % (self.matched, self.worstBeta, self.discrepancy)

class ComplexMeasure():

    """
    Base class of all measure representations.

    Subclasses provide ftEval(), moment() and totalVariationBound().
    Measures are immutable after construction.
    """

    TYPE = None

    #space side measures expose atoms(); spectral ones don't
    SPACE_SIDE = False

    logger = logging.getLogger("fmetric.Measure.Generic")

    def __init__(self, dim):

        if dim not in SUPPORTED_DIMS:
            raise ValueError("dimension must be one of %s, got %s" % (str(SUPPORTED_DIMS), dim))
        self.dim = dim

    def ftEval(self, xi):

        """
        Evaluate the Fourier transform mu^(xi) = int e^{-i x.xi} dmu(x).
        """

        raise NotImplementedError

    def moment(self, beta):

        """
        The beta moment int x^beta dmu(x).
        """

        raise NotImplementedError

    def totalVariationBound(self):

        """
        An upper bound on the total variation |mu|(R^d).
        """

        raise NotImplementedError

    def maxMomentOrder(self):

        return MAX_MOMENT_ORDER

    def spatialExtent(self):

        """
        Radius of a ball in x space that carries (essentially) all of the
        mass. Used to choose frequency resolution.
        """

        return 1.0

    def frequencyRadius(self):

        """
        Radius beyond which the Fourier transform is negligible, or None
        if it doesn't decay.
        """

        return None

    def sameAs(self, other):

        """
        True iff other is the same measure in the same representation.
        """

        raise NotImplementedError

    def toJSON(self):

        raise NotImplementedError

    def _checkBeta(self, beta):

        beta = parseMultiIndex(beta, self.dim)
        if beta.order() > self.maxMomentOrder():
            raise MomentOrderError("order %d exceeds the maximum order %d of %s" % (beta.order(), self.maxMomentOrder(), self.__class__.__name__))
        return beta

class DiscreteMeasure(ComplexMeasure):

    """
    mu = sum_k w_k delta_{x_k} with complex weights.

    points has shape (K, d) (a flat list is read as K points in R^1),
    weights has shape (K,).
    """

    TYPE = MeasureType.DISCRETE
    SPACE_SIDE = True

    logger = logging.getLogger("fmetric.Measure.Discrete")

    def __init__(self, points, weights):

        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(-1, 1)
        weights = np.asarray(weights, dtype=complex).reshape(-1)
        if points.ndim != 2 or points.shape[0] != weights.shape[0]:
            raise ValueError("need one weight per atom (%d atoms, %d weights)" % (points.shape[0], weights.shape[0]))
        if points.shape[0] == 0:
            raise ValueError("a discrete measure needs at least one atom")
        if not (np.all(np.isfinite(points)) and np.all(np.isfinite(weights))):
            raise ValueError("atoms and weights must be finite")

        super().__init__(points.shape[1])
        self.points = points
        self.weights = weights
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    @classmethod
    def dirac(cls, x, weight=1.0):

        x = np.atleast_1d(np.asarray(x, dtype=float))
        return cls(x.reshape(1, -1), [weight])

    def atoms(self):

        return self.points, self.weights

    def ftEval(self, xi):

        pts, single = asPoints(xi, self.dim)
        return _unwrap(atomSum(self.points, self.weights, pts), single)

    def moment(self, beta):

        beta = self._checkBeta(beta)
        return complex(np.sum(self.weights * beta.monomial(self.points)))

    def totalVariationBound(self):

        return float(np.sum(np.abs(self.weights)))

    def spatialExtent(self):

        return max(1.0, float(np.max(np.linalg.norm(self.points, axis=1))))

    def scale(self, a):

        """
        The measure a*mu for a complex scalar a.
        """

        return DiscreteMeasure(self.points, self.weights * complex(a))

    def add(self, other):

        """
        Atom-wise sum mu + nu of two discrete measures.
        """

        if not isinstance(other, DiscreteMeasure):
            raise TypeError("can only add DiscreteMeasure to DiscreteMeasure, not '%s'" % other.__class__.__name__)
        if other.dim != self.dim:
            raise DimensionMismatchError("cannot add measures on R^%d and R^%d" % (self.dim, other.dim))
        return DiscreteMeasure(np.vstack([self.points, other.points]),
                               np.concatenate([self.weights, other.weights]))

    def canonical(self):

        """
        Merge coincident atoms, drop zero weights and sort atoms
        lexicographically. Returns (points, weights).
        """

        unique, inverse = np.unique(self.points, axis=0, return_inverse=True)
        merged = np.zeros(unique.shape[0], dtype=complex)
        np.add.at(merged, inverse.reshape(-1), self.weights)
        keep = merged != 0
        return unique[keep], merged[keep]

    def sameAs(self, other):

        if not isinstance(other, DiscreteMeasure) or other.dim != self.dim:
            return False
        p1, w1 = self.canonical()
        p2, w2 = other.canonical()
        return p1.shape == p2.shape and np.array_equal(p1, p2) and np.array_equal(w1, w2)

    def toJSON(self):

        return {
            "type": self.TYPE.value,
            "dim": self.dim,
            "atoms": [{"x": [float(c) for c in x], "w": complexToJSON(w)} for x, w in zip(self.points, self.weights)]
            }

    @classmethod
    def fromJSON(cls, d):

        dim = _dim(d)
        atoms = _field(d, "atoms")
        if not isinstance(atoms, list) or not atoms:
            raise MeasureSpecError("atoms", "expected a non-empty list")
        points = []
        weights = []
        for i, atom in enumerate(atoms):
            points.append(_vector(_field(atom, "x", "atoms[%d].x" % i), "atoms[%d].x" % i, dim))
            weights.append(parseComplex(_field(atom, "w", "atoms[%d].w" % i), "atoms[%d].w" % i))
        return cls(np.array(points), weights)

class GridSpec():

    """
    A rectangular grid: origin, spacing h per axis and number of nodes
    per axis. Node i_j on axis j sits at origin_j + i_j * h_j.
    """

    def __init__(self, origin, spacing, shape):

        self.origin = np.asarray(origin, dtype=float).reshape(-1)
        self.spacing = np.asarray(spacing, dtype=float).reshape(-1)
        self.shape = tuple(int(n) for n in shape)
        d = self.origin.shape[0]
        if self.spacing.shape[0] != d or len(self.shape) != d:
            raise DimensionMismatchError("origin, spacing and shape must have the same length")
        if d not in SUPPORTED_DIMS:
            raise ValueError("grid dimension must be one of %s" % str(SUPPORTED_DIMS))
        if np.any(self.spacing <= 0):
            raise ValueError("grid spacing must be positive")
        if any(n < 2 for n in self.shape):
            raise ValueError("every grid axis needs at least two nodes")

    @classmethod
    def symmetric(cls, d, xMax, h):

        """
        The grid [-xMax, xMax]^d with spacing h (xMax is rounded up to a
        multiple of h).
        """

        n = int(np.ceil(xMax / h))
        return cls([-n * h] * d, [h] * d, [2 * n + 1] * d)

    @property
    def dim(self):

        return self.origin.shape[0]

    def axes(self):

        return [self.origin[j] + self.spacing[j] * np.arange(self.shape[j]) for j in range(self.dim)]

    def points(self):

        """
        All nodes as an (N, d) array in C order.
        """

        mesh = np.meshgrid(*self.axes(), indexing="ij")
        return np.stack([c.reshape(-1) for c in mesh], axis=1)

    def weights(self):

        """
        Trapezoidal quadrature weights of all nodes, C order.
        """

        w = np.ones(1)
        for j in range(self.dim):
            wj = np.full(self.shape[j], self.spacing[j])
            wj[0] *= 0.5
            wj[-1] *= 0.5
            w = np.multiply.outer(w, wj)
        return w.reshape(-1)

    def radius(self):

        corners = [np.maximum(np.abs(a[0]), np.abs(a[-1])) for a in self.axes()]
        return float(np.sqrt(np.sum(np.square(corners))))

    def __eq__(self, other):

        if not isinstance(other, GridSpec):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.origin, other.origin)
                and np.array_equal(self.spacing, other.spacing))

class GridDensity(ComplexMeasure):

    """
    The measure density(x) dx where density is sampled on a GridSpec.
    All integrals use the trapezoidal rule on the grid.
    """

    TYPE = MeasureType.GRID
    SPACE_SIDE = True

    logger = logging.getLogger("fmetric.Measure.Grid")

    def __init__(self, grid, density):

        density = np.asarray(density, dtype=complex)
        if density.size != int(np.prod(grid.shape)):
            raise ValueError("density has %d samples, grid has %d nodes" % (density.size, int(np.prod(grid.shape))))
        if not np.all(np.isfinite(density)):
            raise ValueError("density samples must be finite")
        super().__init__(grid.dim)
        self.grid = grid
        self.density = density.reshape(grid.shape)
        self.density.setflags(write=False)
        self._points = None
        self._weights = None

    def _integrate(self, values):

        for j in reversed(range(self.dim)):
            values = trapezoid(values, dx=self.grid.spacing[j], axis=j)
        return values

    def atoms(self):

        """
        The quadrature rule as atoms: nodes with weight density * trapezoid weight.
        """

        if self._points is None:
            self._points = self.grid.points()
            self._weights = self.density.reshape(-1) * self.grid.weights()
        return self._points, self._weights

    def ftEval(self, xi):

        pts, single = asPoints(xi, self.dim)
        points, weights = self.atoms()
        return _unwrap(atomSum(points, weights, pts), single)

    def moment(self, beta):

        beta = self._checkBeta(beta)
        mono = beta.monomial(self.grid.points()).reshape(self.grid.shape)
        return complex(self._integrate(self.density * mono))

    def totalVariationBound(self):

        return float(self._integrate(np.abs(self.density)))

    def spatialExtent(self):

        return max(1.0, self.grid.radius())

    def sameAs(self, other):

        return (isinstance(other, GridDensity) and self.grid == other.grid
                and np.array_equal(self.density, other.density))

    def toJSON(self):

        return {
            "type": self.TYPE.value,
            "dim": self.dim,
            "origin": self.grid.origin.tolist(),
            "spacing": self.grid.spacing.tolist(),
            "shape": list(self.grid.shape),
            "density": [complexToJSON(z) for z in self.density.reshape(-1)]
            }

    @classmethod
    def fromJSON(cls, d):

        dim = _dim(d)
        origin = _vector(_field(d, "origin"), "origin", dim)
        spacing = _vector(_field(d, "spacing"), "spacing", dim)
        shape = _field(d, "shape")
        if not isinstance(shape, list) or len(shape) != dim or not all(isinstance(n, int) and n >= 2 for n in shape):
            raise MeasureSpecError("shape", "expected %d integers >= 2" % dim)
        if np.any(spacing <= 0):
            raise MeasureSpecError("spacing", "must be positive")
        samples = _field(d, "density")
        if not isinstance(samples, list) or len(samples) != int(np.prod(shape)):
            raise MeasureSpecError("density", "expected %d samples" % int(np.prod(shape)))
        density = np.array([parseComplex(z, "density[%d]" % i) for i, z in enumerate(samples)])
        return cls(GridSpec(origin, spacing, shape), density)

class SpectralMeasure(ComplexMeasure):

    """
    A measure given on the frequency side only.

    evaluator maps an (n, d) array of frequencies to an (n,) complex array.
    The total variation bound and the moments (a MomentSpec) are declared
    by the creator, not computed; consistency phi(0) = M_0 is checked.
    """

    TYPE = MeasureType.SPECTRAL

    logger = logging.getLogger("fmetric.Measure.Spectral")

    def __init__(self, dim, evaluator, tvBound, moments=None, extent=1.0, freqRadius=None):

        super().__init__(dim)
        tvBound = float(tvBound)
        if not np.isfinite(tvBound) or tvBound < 0:
            raise ValueError("declared total variation bound must be finite and non-negative, got %r" % tvBound)
        if moments is not None and moments.d != dim:
            raise DimensionMismatchError("moment spec has dimension %d, measure %d" % (moments.d, dim))

        self.evaluator = evaluator
        self.tvBound = tvBound
        self.moments = moments
        self.extent = float(extent)
        self.freqRadius = freqRadius

        if moments is not None:
            at0 = complex(evaluator(np.zeros((1, dim)))[0])
            m0 = moments[MultiIndex.zero(dim)]
            if abs(at0 - m0) > 1e-12 * max(1.0, abs(m0)):
                raise ValueError("spectral evaluator gives phi(0)=%r but the declared M_0 is %r" % (at0, m0))

    def ftEval(self, xi):

        pts, single = asPoints(xi, self.dim)
        return _unwrap(np.asarray(self.evaluator(pts), dtype=complex), single)

    def maxMomentOrder(self):

        return self.moments.m if self.moments is not None else -1

    def moment(self, beta):

        beta = parseMultiIndex(beta, self.dim)
        if self.moments is None or beta.order() > self.moments.m:
            raise MomentOrderError("spectral measure declares moments up to order %d, %s requested" % (self.maxMomentOrder(), beta))
        return self.moments[beta]

    def totalVariationBound(self):

        return self.tvBound

    def spatialExtent(self):

        return self.extent

    def frequencyRadius(self):

        return self.freqRadius

    def atoms(self):

        raise SpectralMeasureError("spectral measures have no space side representation")

    def sameAs(self, other):

        return other is self

def gaussianMoments(mean, cov, order):

    """
    All moments E[x^beta], |beta| <= order, of the normal law N(mean, cov).

    Uses the recursion
    E[x^{beta+e_j}] = mean_j E[x^beta] + sum_k cov_jk beta_k E[x^{beta-e_k}].
    """

    d = len(mean)
    values = {MultiIndex.zero(d): 1.0}
    for beta in enumerateUpto(d, order):
        if beta.order() == 0:
            continue
        #peel off the first non-zero coordinate
        j = next(i for i, b in enumerate(beta) if b > 0)
        base = beta - MultiIndex.unit(d, j)
        value = mean[j] * values[base]
        for k in range(d):
            if base[k] > 0:
                value += cov[j][k] * base[k] * values[base - MultiIndex.unit(d, k)]
        values[beta] = value
    return values

class GaussianMeasure(SpectralMeasure):

    """
    weight * N(mean, cov) given by its closed form characteristic function
    weight * exp(-i mean.xi - xi^T cov xi / 2).

    The declared moments are exact up to order (default 8).
    """

    TYPE = MeasureType.GAUSSIAN

    logger = logging.getLogger("fmetric.Measure.Gaussian")

    def __init__(self, mean, cov, weight=1.0, order=8):

        mean = np.asarray(mean, dtype=float).reshape(-1)
        cov = np.asarray(cov, dtype=float)
        d = mean.shape[0]
        if cov.shape != (d, d):
            raise DimensionMismatchError("covariance must be %dx%d" % (d, d))
        if not np.allclose(cov, cov.T):
            raise ValueError("covariance must be symmetric")
        eig = np.linalg.eigvalsh(cov)
        if np.any(eig <= 0):
            raise ValueError("covariance must be positive definite")

        self.mean = mean
        self.cov = cov
        self.weight = complex(weight)
        self.order = order

        moments = MomentSpec(d, order, {beta: self.weight * v for beta, v in gaussianMoments(mean, cov, order).items()})

        def evaluator(xi):
            quad = np.einsum("ni,ij,nj->n", xi, cov, xi)
            return self.weight * np.exp(-1j * (xi @ mean) - 0.5 * quad)

        #exp(-q/2) < 1e-18 beyond this radius
        freqRadius = float(np.sqrt(2.0 * 41.5 / eig[0]))
        extent = float(np.linalg.norm(mean) + 9.0 * np.sqrt(eig[-1]))
        super().__init__(d, evaluator, abs(self.weight), moments, extent=max(1.0, extent), freqRadius=freqRadius)

    def sameAs(self, other):

        return (isinstance(other, GaussianMeasure) and np.array_equal(self.mean, other.mean)
                and np.array_equal(self.cov, other.cov) and self.weight == other.weight)

    def toJSON(self):

        return {
            "type": self.TYPE.value,
            "dim": self.dim,
            "mean": self.mean.tolist(),
            "cov": self.cov.tolist(),
            "weight": complexToJSON(self.weight),
            "order": self.order
            }

    @classmethod
    def fromJSON(cls, d):

        dim = _dim(d)
        mean = _vector(_field(d, "mean"), "mean", dim)
        try:
            cov = np.asarray(_field(d, "cov"), dtype=float)
        except (TypeError, ValueError):
            raise MeasureSpecError("cov", "expected a %dx%d matrix" % (dim, dim))
        if cov.shape != (dim, dim):
            raise MeasureSpecError("cov", "expected a %dx%d matrix" % (dim, dim))
        weight = parseComplex(d.get("weight", [1.0, 0.0]), "weight")
        order = d.get("order", 8)
        if isinstance(order, bool) or not isinstance(order, int) or order < 2:
            raise MeasureSpecError("order", "must be an integer >= 2")
        try:
            return cls(mean, cov, weight, order)
        except ValueError as e:
            raise MeasureSpecError("cov", str(e))

MEASURE_CLASSES = {
    MeasureType.DISCRETE: DiscreteMeasure,
    MeasureType.GRID: GridDensity,
    MeasureType.GAUSSIAN: GaussianMeasure,
    }

def parseMeasure(d):

    """
    Build a measure from a parsed JSON measure spec.
    Raises MeasureSpecError naming the offending field.
    """

    name = _field(d, "type")
    try:
        kind = MeasureType(name)
    except ValueError:
        raise MeasureSpecError("type", "unknown measure type %r" % (name,))

    if kind == MeasureType.PHI_DELTA:
        #counterexample builds on this module
        from .counterexample import PhiDeltaFamily, makeMeasure
        return makeMeasure(PhiDeltaFamily.fromJSON(d))

    if kind not in MEASURE_CLASSES:
        raise MeasureSpecError("type", "measures of type %r can't be read from a spec" % name)

    logger.debug("Parsing %s measure spec..." % name)
    return MEASURE_CLASSES[kind].fromJSON(d)

def loadJSON(path):

    path = pathlib.Path(path)
    try:
        with open(path, "r") as f:
            return json.load(f)
    except OSError as e:
        raise MeasureSpecError(str(path), "can't read file: %s" % e.strerror)
    except json.JSONDecodeError as e:
        raise MeasureSpecError(str(path), "invalid JSON: %s" % e.msg)

def loadMeasureJSON(path):

    """
    Load a measure from a JSON measure spec file.
    """

    return parseMeasure(loadJSON(path))

def momentsMatch(mu, spec, tol=MOMENT_TOL):

    """
    Test membership of mu in the moment class M_m^M given by spec.

    Returns a MomentReport, which is truthy iff
    max_{|beta| <= m} |moment(mu, beta) - M_beta| <= tol.
    A moment mu can't provide counts as an infinite discrepancy; it
    becomes the worst beta and no higher orders are checked.
    """

    if mu.dim != spec.d:
        raise DimensionMismatchError("measure lives in R^%d, moment spec in R^%d" % (mu.dim, spec.d))

    table = []
    worstBeta = None
    worst = -1.0
    for beta, prescribed in spec.items():
        try:
            value = mu.moment(beta)
        except MomentOrderError as e:
            logger.debug("moment %s unavailable: %s" % (beta, str(e)))
            table.append((beta, None, prescribed))
            worst = float("inf")
            worstBeta = beta
            break
        gap = abs(value - prescribed)
        table.append((beta, value, prescribed))
        if gap > worst:
            worst = gap
            worstBeta = beta

    return MomentReport(worst <= tol, worstBeta, worst, tol, table)
