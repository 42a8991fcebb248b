"""Integer-vanishing criteria and growth checks for finite exponential sums."""

__version__ = "0.1.0"

from .balayage import SweepConfig, sweep_atom, sweep_measure, verify_sweep
from .carlson import (ArgRange, DichotomyReport, SpectralBand, arg_support_range,
                      dichotomy_check, representation_chain, spectral_band)
from .exceptions import (AliasRisk, AtomTooClose, CarlsonKitError, DegenerateSum, EmptyMeasure,
                         NonRealFrequency, ParseError)
from .expsum import (ExpSum, GrowthEstimate, IndicatorEstimate, direct_integer_vanishing,
                     estimate_indicator, evaluate, growth_rate_imaginary, spectral_measure)
from .hardy import (CriterionReport, Method, cauchy_coefficients, discrete_criterion,
                    moments_atomic, moments_density, pipeline_criterion, vanishing_criterion,
                    vanishing_criterion_density)
from .io import Document, parse_document, serialize_document
from .measures import (BoundaryDensity, CircleMeasure, PlanarMeasure, merge_atoms,
                       split_interior_boundary, support_radius)
from .periodize import moment_pushforward_check, periodize
