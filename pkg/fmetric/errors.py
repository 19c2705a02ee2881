
class FourierMetricError(Exception):

    """
    Base exception for errors thrown by the fmetric library.
    Idealy, this could be used to catch every error raised by this library.
    This does not include errors raised by numpy or scipy themselves.
    """

    pass

class DimensionMismatchError(FourierMetricError, ValueError):

    """
    Raised when two objects that have to live in the same R^d don't.
    """

    pass

class MultiIndexOverflowError(FourierMetricError, OverflowError):

    """
    Raised when an integer computed from a multi-index would not fit
    into a signed 64 bit integer.
    """

    pass

class MomentOrderError(FourierMetricError):

    """
    Raised when a moment or derivative is requested beyond the order
    a measure representation can provide.
    """

    pass

class SpectralMeasureError(FourierMetricError):

    """
    Raised when a space-side representation is required but a spectral
    (frequency-side) measure was passed.
    """

    pass

class TruncationError(FourierMetricError):

    """
    Raised when the truncation radius of an inverse transform is too small
    for the requested accuracy.
    """

    pass

class FamilyError(FourierMetricError):

    """
    Raised for invalid counterexample family parameters, most notably
    when a measure is requested for delta = 0.
    """

    pass

class MeasureSpecError(FourierMetricError):

    """
    Raised when a measure spec (JSON) is malformed.
    The message always names the offending field.
    """

    def __init__(self, field, reason):

        super().__init__("field '%s': %s" % (field, reason))
        self.field = field
        self.reason = reason

class DivergentMetricError(FourierMetricError):

    """
    Raised by dm() when the ratio blows up near the origin, i.e. the two
    measures are not in the same moment class.

    beta is the lowest order mismatched multi-index (or None if the
    divergence was only detected from the growth of the ratio), direction
    is the unit vector along which the blow up was observed and exponent
    is the growth exponent of the ratio as |xi| -> 0 (negative).
    """

    def __init__(self, beta, direction, exponent):

        if beta is not None:
            msg = "divergent beta=%s (ratio grows like |xi|^%.3g)" % (beta, exponent)
        else:
            msg = "divergent ratio near the origin (ratio grows like |xi|^%.3g)" % exponent
        super().__init__(msg)
        self.beta = beta
        self.direction = direction
        self.exponent = exponent
