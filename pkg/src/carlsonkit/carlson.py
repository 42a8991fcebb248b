"""Support geometry of spectral measures and the classical growth dichotomy.

A sum vanishing on the non-negative integers is either identically zero or
satisfies ``limsup ln|g(iy)| / |y| >= pi``. :func:`dichotomy_check` runs the
vanishing pipeline and measures the growth on the imaginary axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .balayage import DEFAULT_GRID, DEFAULT_GUARD, quadrature_moments, sweep_measure
from .exceptions import EmptyMeasure
from .expsum import (ExpSum, GrowthEstimate, direct_integer_vanishing, growth_rate_imaginary,
                     log_abs, log_termwise_scale, spectral_measure)
from .hardy import CriterionReport, pipeline_criterion
from .measures import (CircleMeasure, PlanarMeasure, merge_atoms, principal_arg,
                       split_interior_boundary, support_radius)
from .periodize import circle_moments, periodize, planar_moments

TRIVIALITY_GRID = np.linspace(0.1, 5.0, 64)


@dataclass(frozen=True)
class SpectralBand:
    b_lower: float
    b_upper: float

    def __post_init__(self):
        if self.b_lower > self.b_upper:
            raise ValueError("b_lower must not exceed b_upper")

    @property
    def half_width(self) -> float:
        return max(abs(self.b_lower), abs(self.b_upper))

    def strictly_inside(self, bound: float = math.pi) -> bool:
        return -bound < self.b_lower and self.b_upper < bound


@dataclass(frozen=True)
class ArgRange:
    arg_min: float
    arg_max: float

    def __post_init__(self):
        if self.arg_min > self.arg_max:
            raise ValueError("arg_min must not exceed arg_max")

    def avoids_cut(self) -> bool:
        """True when no atom sits on the ray ``arg = -pi``."""
        return self.arg_min > -math.pi


@dataclass(frozen=True)
class DichotomyReport:
    vanishes: bool
    is_trivial: bool
    growth: GrowthEstimate
    carlson_bound_met: bool | None
    criterion: CriterionReport
    direct_vanishing: bool


def spectral_band(mu: PlanarMeasure) -> SpectralBand:
    if not mu:
        raise EmptyMeasure("spectral band of the zero measure is undefined")
    im = mu.locations.imag
    return SpectralBand(float(np.min(im)), float(np.max(im)))


def arg_support_range(nu: CircleMeasure) -> ArgRange:
    """Principal-argument range of the atoms of ``nu``, in ``[-pi, pi)``."""
    if not nu:
        raise EmptyMeasure("argument range of the zero measure is undefined")
    args = [principal_arg(a) for a, _ in nu.atoms]
    return ArgRange(min(args), max(args))


def is_identically_zero(g: ExpSum, rel_tol: float = 1e-9) -> bool:
    """Whether ``g`` vanishes on a dense sample of ``[0.1, 5]``.

    Relative to the termwise magnitude sum at each point.
    """
    if not g:
        return True
    with np.errstate(invalid="ignore"):
        rel = np.exp(log_abs(g, TRIVIALITY_GRID) - log_termwise_scale(g, TRIVIALITY_GRID))
    return bool(np.all(np.nan_to_num(rel, nan=0.0) <= rel_tol))


def carlson_slack(g: ExpSum, y_max: float) -> float:
    """Finite-window allowance ``|ln sum|c_k|| / y_max`` on the growth rate."""
    return abs(math.log(g.coefficient_l1())) / y_max


def dichotomy_check(g: ExpSum, n_max: int = 30, y_max: float = 100.0, tol: float = 0.05,
                    criterion_tol: float = 1e-9, n_samples: int = 512) -> DichotomyReport:
    """Classify ``g`` and test the growth bound when it vanishes nontrivially.

    ``carlson_bound_met`` is ``None`` unless ``g`` vanishes on the integers
    without being identically zero; then it records whether the measured
    rate reaches ``pi - tol - carlson_slack``. ``n_max`` bounds the direct
    evaluation cross-check.
    """
    crit = pipeline_criterion(g, criterion_tol)
    direct = direct_integer_vanishing(g, n_max, criterion_tol).verdict
    nu = merge_atoms(periodize(spectral_measure(g))) if g else CircleMeasure()
    trivial = not nu and is_identically_zero(g, criterion_tol)
    if g:
        growth = growth_rate_imaginary(g, 1.0, y_max, n_samples)
    else:
        growth = GrowthEstimate(-math.inf, float(y_max), 2 * n_samples)
    bound = None
    if crit.verdict and not trivial:
        bound = growth.rate >= math.pi - tol - carlson_slack(g, y_max)
    return DichotomyReport(crit.verdict, trivial, growth, bound, crit, direct)


@dataclass(frozen=True)
class RepresentationChain:
    """``g(n)`` computed four ways, for ``n = 0..n_max``.

    ``direct`` evaluates the sum, ``planar`` integrates ``exp(n omega)``
    against the spectral measure, ``circle`` integrates ``zeta**n`` against
    its periodization, and ``swept`` combines the quadrature moments of the
    swept interior with the boundary atoms kept as they are.
    """

    direct: np.ndarray
    planar: np.ndarray
    circle: np.ndarray
    swept: np.ndarray
    radius: float

    def max_relative_gap(self, scale: np.ndarray) -> float:
        stages = (self.planar, self.circle, self.swept)
        return float(max(np.max(np.abs(s - self.direct) / scale) for s in stages))


def representation_chain(g: ExpSum, n_max: int = 16, M: int = DEFAULT_GRID,
                         guard: float = DEFAULT_GUARD) -> RepresentationChain:
    """Follow ``g(n)`` from the sum through the disc to its boundary circle."""
    mu = spectral_measure(g)
    nu = periodize(mu)
    n = np.arange(n_max + 1, dtype=float)
    direct = np.array([complex(v) for v in g(n)]) if g else np.zeros(n.size, dtype=complex)
    planar = planar_moments(mu, n_max)
    circle = circle_moments(nu, n_max)
    if not nu:
        return RepresentationChain(direct, planar, circle, np.zeros(n.size, dtype=complex), 0.0)
    r = support_radius(nu)
    interior, boundary = split_interior_boundary(nu, r, tol=1e-12 * r)
    swept = circle_moments(boundary, n_max)
    if interior:
        swept = swept + quadrature_moments(sweep_measure(interior, r, M, guard), n_max)
    return RepresentationChain(direct, planar, circle, swept, r)
