import enum

class MeasureType(enum.Enum):

    """
    Enum listing all measure representations.
    The values double as the "type" key of the JSON measure spec.
    """

    DISCRETE = "discrete"
    GRID = "grid"
    PHI_DELTA = "phi_delta"
    GAUSSIAN = "gaussian"
    SPECTRAL = "spectral"

class Regime(enum.Enum):

    """
    Enum listing the three regimes of the supremum search.
    """

    NEAR = "near"
    MID = "mid"
    FAR = "far"

class Verdict(enum.Enum):

    FINITE = "finite"
    DIVERGENT = "divergent"

class Branch(enum.Enum):

    """
    The two scale sequences of the smoothness probe.
    A runs through the zeros of cos(1/|h|^m), B through its maxima.
    """

    A = "A"
    B = "B"
