"""
Fourier based metrics between complex measures
"""

__title__ = "fmetric"
__author__ = "fredi_68"
__version__ = "1.0.0"

from .multiindex import MultiIndex, enumerateUpto
from .measure import (MomentSpec, ComplexMeasure, DiscreteMeasure, GridSpec, GridDensity,
                      SpectralMeasure, GaussianMeasure, parseMeasure, loadMeasureJSON, momentsMatch)
from .fourier import ftEval, ftDerivative, momentFromFT, inverseFTGrid
from .metric import SupremumSearch, MetricEstimate, ratio, dm, divergenceCheck, metricAxiomsProbe
from .counterexample import (PhiDeltaFamily, PhiDeltaMeasure, makeMeasure, cauchySequence,
                             verifyLipschitz, gBoundCheck, verifyMomentsAtZero, phi0SmoothnessProbe)
from .enums import MeasureType, Regime, Verdict, Branch
from .errors import FourierMetricError, DivergentMetricError, MeasureSpecError

from . import multiindex, measure, fourier, metric, counterexample, enums, errors
