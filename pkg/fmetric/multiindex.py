"""
Multi-index arithmetic.

A multi-index beta = (beta_1, ..., beta_d) of non-negative integers indexes
monomials x^beta, moments and partial derivatives D^beta.
"""

import math
import numbers
import logging

import numpy as np

from .errors import DimensionMismatchError, MultiIndexOverflowError

INT64_MAX = 2**63 - 1

logger = logging.getLogger("fmetric.MultiIndex")

def _checked(value, what):

    if value > INT64_MAX:
        raise MultiIndexOverflowError("%s overflows a 64 bit integer" % what)
    return value

class MultiIndex():

    """
    An immutable exponent vector beta in N^d.

    MultiIndex instances are hashable and compare equal to each other if
    their entries are equal, so they can be used as dictionary keys (see
    MomentSpec). They serialize as plain integer lists, e.g. [1, 2, 0].
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):

        entries = tuple(entries)
        if len(entries) < 1:
            raise ValueError("multi-index needs at least one entry (d >= 1)")
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, numbers.Integral):
                raise TypeError("multi-index entries must be integers, not '%s'" % type(e).__name__)
            if e < 0:
                raise ValueError("multi-index entries must be non-negative, got %s" % str(entries))
        object.__setattr__(self, "_entries", tuple(int(e) for e in entries))

    def __setattr__(self, name, value):

        raise AttributeError("MultiIndex is immutable")

    @classmethod
    def zero(cls, d):

        return cls([0] * d)

    @classmethod
    def unit(cls, d, j):

        """
        The j-th unit multi-index e_j (0 based).
        """

        entries = [0] * d
        entries[j] = 1
        return cls(entries)

    @property
    def entries(self):

        return self._entries

    @property
    def dim(self):

        return len(self._entries)

    def __len__(self):

        return len(self._entries)

    def __iter__(self):

        return iter(self._entries)

    def __getitem__(self, i):

        return self._entries[i]

    def __eq__(self, other):

        if isinstance(other, MultiIndex):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self):

        return hash(("MultiIndex", self._entries))

    def __repr__(self):

        return "MultiIndex(%s)" % list(self._entries)

    def __str__(self):

        return "[%s]" % ",".join(str(e) for e in self._entries)

    def _checkDim(self, other):

        if len(other) != len(self):
            raise DimensionMismatchError("multi-index dimensions differ: %d != %d" % (len(self), len(other)))

    def __add__(self, other):

        self._checkDim(other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):

        """
        Componentwise difference; only defined for other <= self.
        """

        self._checkDim(other)
        if not other.leq(self):
            raise ValueError("%s is not <= %s" % (other, self))
        return MultiIndex(a - b for a, b in zip(self, other))

    def order(self):

        """
        |beta| = beta_1 + ... + beta_d
        """

        return sum(self._entries)

    def factorial(self):

        """
        beta! = beta_1! * ... * beta_d!

        Raises MultiIndexOverflowError if the product does not fit
        into 64 bits.
        """

        result = 1
        for e in self._entries:
            result = _checked(result * _checked(math.factorial(e), "%d!" % e), "%s!" % self)
        return result

    def leq(self, other):

        """
        The standard partial order: alpha <= beta iff alpha_j <= beta_j for all j.
        """

        self._checkDim(other)
        return all(a <= b for a, b in zip(self, other))

    def binomial(self, alpha):

        """
        (beta choose alpha) = prod_j (beta_j choose alpha_j); requires alpha <= beta.
        """

        self._checkDim(alpha)
        if not alpha.leq(self):
            raise ValueError("binomial(%s, %s) requires alpha <= beta" % (self, alpha))
        result = 1
        for b, a in zip(self, alpha):
            result = _checked(result * math.comb(b, a), "binomial(%s, %s)" % (self, alpha))
        return result

    def lowerSet(self):

        """
        All alpha <= beta in graded-lexicographic order.
        """

        return [alpha for alpha in enumerateUpto(self.dim, self.order()) if alpha.leq(self)]

    def monomial(self, x):

        """
        Evaluate x^beta with the convention 0^0 = 1.

        x may be a single point of shape (d,), giving a float, or an array
        of points of shape (n, d), giving an array of shape (n,).
        """

        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise DimensionMismatchError("point has dimension %d, multi-index %d" % (x.shape[-1], self.dim))
        #numpy already evaluates 0.0**0 as 1.0
        values = np.prod(x ** np.asarray(self._entries, dtype=float), axis=-1)
        if x.ndim == 1:
            return float(values)
        return values

    def toJSON(self):

        return list(self._entries)

def _compositions(d, n):

    """
    All exponent vectors of length d summing to n, first coordinate
    descending (x_1 before x_2 before ...).
    """

    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(d - 1, n - first):
            yield (first,) + rest

def enumerateUpto(d, m):

    """
    List all multi-indices beta in N^d with |beta| <= m.

    The order is graded-lexicographic: by total order first, then with
    larger leading exponents first, e.g. for d=2, m=2:
    [0,0], [1,0], [0,1], [2,0], [1,1], [0,2]
    The list has exactly C(d+m, d) entries.
    """

    if d < 1:
        raise ValueError("dimension must be >= 1, got %d" % d)
    if m < 0:
        raise ValueError("order must be >= 0, got %d" % m)

    result = []
    for n in range(m + 1):
        for entries in _compositions(d, n):
            result.append(MultiIndex(entries))
    return result

def parseMultiIndex(value, d=None):

    """
    Build a MultiIndex from its JSON form (an integer list).
    """

    beta = value if isinstance(value, MultiIndex) else MultiIndex(value)
    if d is not None and beta.dim != d:
        raise DimensionMismatchError("multi-index %s does not have dimension %d" % (beta, d))
    return beta
