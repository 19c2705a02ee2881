"""
Fourier transforms of measures and the moment/derivative duality

    (D^beta mu^)(xi) = (-i)^|beta| int x^beta e^{-i x.xi} dmu(x)

Frequency side functions ("evaluators") are callables mapping an (n, d)
array of frequencies to n complex values. Measures can be used wherever an
evaluator is expected.
"""

import math
import logging
import itertools

import numpy as np

from .errors import DimensionMismatchError, SpectralMeasureError, TruncationError
from .measure import ComplexMeasure, GridDensity, asPoints, atomSum
from .multiindex import parseMultiIndex

EPS = np.finfo(float).eps

#|phi| on the boundary of the truncation box relative to its peak
TRUNCATION_ACCURACY = 1e-12

logger = logging.getLogger("fmetric.Fourier")

def asEvaluator(phi, d):

    """
    Wrap a measure or callable into an evaluator of (n, d) arrays.
    """

    if isinstance(phi, ComplexMeasure):
        if phi.dim != d:
            raise DimensionMismatchError("measure lives in R^%d, expected R^%d" % (phi.dim, d))
        return lambda xi: np.asarray(phi.ftEval(np.asarray(xi, dtype=float).reshape(-1, d)), dtype=complex).reshape(-1)

    if not callable(phi):
        raise TypeError("phi must be a measure or a callable, not '%s'" % type(phi).__name__)

    def evaluate(xi):
        xi = np.asarray(xi, dtype=float).reshape(-1, d)
        values = np.asarray(phi(xi), dtype=complex)
        if values.ndim == 0:
            #constant functions
            values = np.full(xi.shape[0], complex(values))
        return values.reshape(-1)

    return evaluate

def ftEval(mu, xi):

    """
    mu^(xi) = int e^{-i x.xi} dmu(x), for a single xi or an (n, d) array.
    """

    return mu.ftEval(xi)

def ftDerivative(mu, beta, xi):

    """
    (D^beta mu^)(xi) = (-i)^|beta| int x^beta e^{-i x.xi} dmu(x).

    Only space side representations (discrete, grid) are supported.
    """

    if not mu.SPACE_SIDE:
        raise SpectralMeasureError("ftDerivative needs a discrete or grid measure, use momentFromFT for spectral ones")
    beta = mu._checkBeta(beta)
    pts, single = asPoints(xi, mu.dim)
    points, weights = mu.atoms()
    values = (-1j) ** beta.order() * atomSum(points, weights * beta.monomial(points), pts)
    if single:
        return complex(values[0])
    return values

def defaultStep(beta, scale=1.0):

    """
    h = eps^(1/(|beta|+2)) * scale, balancing truncation and cancellation
    of a second order accurate stencil for D^beta.
    """

    return scale * EPS ** (1.0 / (beta.order() + 2))

def _stencil(beta, h):

    """
    Tensor product of central difference stencils.

    Along an axis of order k the nodes are (k/2 - i) h with coefficients
    (-1)^i C(k, i) / h^k, i = 0..k; this is second order accurate for all k.
    Returns (offsets (p, d), coefficients (p,)).
    """

    axes = []
    for k in beta:
        nodes = [(k / 2.0 - i) * h for i in range(k + 1)]
        coefs = [(-1) ** i * math.comb(k, i) / h ** k for i in range(k + 1)]
        axes.append(list(zip(nodes, coefs)))

    offsets = []
    coefficients = []
    for combo in itertools.product(*axes):
        offsets.append([node for node, _ in combo])
        coefficients.append(np.prod([c for _, c in combo]))
    return np.array(offsets), np.array(coefficients)

def fdDerivative(phi, beta, h, at=None):

    """
    Central finite difference estimate of (D^beta phi)(at), at defaults to 0.
    """

    beta = parseMultiIndex(beta)
    d = beta.dim
    evaluate = asEvaluator(phi, d)
    if h <= 0:
        raise ValueError("step h must be positive, got %r" % h)
    center = np.zeros(d) if at is None else np.asarray(at, dtype=float).reshape(d)
    if beta.order() == 0:
        return complex(evaluate(center.reshape(1, d))[0])
    offsets, coefficients = _stencil(beta, h)
    return complex(np.sum(coefficients * evaluate(center + offsets)))

def richardsonDerivative(phi, beta, h, at=None):

    """
    One Richardson step on fdDerivative: (4 D(h/2) - D(h)) / 3, fourth order
    accurate for smooth phi.
    """

    coarse = fdDerivative(phi, beta, h, at)
    fine = fdDerivative(phi, beta, h / 2.0, at)
    return (4.0 * fine - coarse) / 3.0

def momentFromFT(phi, beta, h=None, richardson=False):

    """
    Recover int x^beta dmu = i^|beta| (D^beta phi)(0) from the Fourier
    transform phi of mu by central differences with step h.

    h defaults to defaultStep(beta). Accuracy is the caller's concern.
    """

    beta = parseMultiIndex(beta)
    if h is None:
        h = defaultStep(beta)
    derivative = richardsonDerivative(phi, beta, h) if richardson else fdDerivative(phi, beta, h)
    return (1j) ** beta.order() * derivative

def _axisWeights(n, step):

    w = np.full(n, step)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w

def inverseFTGrid(phi, grid, radius=None, freqStep=None, accuracy=TRUNCATION_ACCURACY):

    """
    Sample (2 pi)^-d int phi(xi) e^{i xi.x} dxi on the nodes of grid.

    The integral is truncated to the box |xi_j| <= radius and computed by
    the trapezoidal rule with step freqStep (default pi / (2 x_max), x_max
    the largest |x| coordinate on the grid); the tensor product structure
    is used to apply one transform matrix per axis.
    radius defaults to phi.truncationRadius() when phi provides it.

    Raises TruncationError if |phi| on the boundary of the box exceeds
    accuracy times its peak.
    Returns a GridDensity.
    """

    d = grid.dim
    if radius is None:
        if hasattr(phi, "truncationRadius"):
            radius = phi.truncationRadius()
        elif isinstance(phi, ComplexMeasure) and phi.frequencyRadius() is not None:
            radius = phi.frequencyRadius()
        else:
            raise TruncationError("no truncation radius given and phi doesn't provide one")
    if radius <= 0:
        raise TruncationError("truncation radius must be positive, got %r" % radius)

    xAxes = grid.axes()
    xMax = max(float(np.max(np.abs(a))) for a in xAxes)
    if freqStep is None:
        freqStep = np.pi / (2.0 * max(xMax, 1.0))
    if freqStep > np.pi / max(xMax, 1e-300):
        logger.warning("frequency step %.4g is coarser than pi/x_max = %.4g, expect aliasing" % (freqStep, np.pi / xMax))

    k = int(np.ceil(radius / freqStep))
    xiAxis = freqStep * np.arange(-k, k + 1)
    n = xiAxis.shape[0]
    logger.debug("inverse transform: radius %.4g, step %.4g, %d^%d frequency nodes, grid %s" % (radius, freqStep, n, d, str(grid.shape)))

    evaluate = asEvaluator(phi, d)
    mesh = np.meshgrid(*([xiAxis] * d), indexing="ij")
    xi = np.stack([c.reshape(-1) for c in mesh], axis=1)
    values = evaluate(xi).reshape((n,) * d)

    peak = float(np.max(np.abs(values)))
    if peak > 0:
        boundary = np.zeros((n,) * d, dtype=bool)
        for j in range(d):
            index = [slice(None)] * d
            index[j] = [0, -1]
            boundary[tuple(index)] = True
        edge = float(np.max(np.abs(values[boundary])))
        if edge > accuracy * peak:
            raise TruncationError("|phi| reaches %.3g of its peak on the truncation box of radius %.4g (accuracy %.1g)" % (edge / peak, radius, accuracy))

    w = _axisWeights(n, freqStep)
    result = values
    for j in range(d):
        matrix = np.exp(1j * np.outer(xAxes[j], xiAxis)) * w[None, :]
        result = np.moveaxis(np.tensordot(result, matrix, axes=([j], [1])), -1, j)
    result = result / (2.0 * np.pi) ** d

    return GridDensity(grid, result)
