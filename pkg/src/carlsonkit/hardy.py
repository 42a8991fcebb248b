"""Moment sequences and the integer-vanishing criteria.

Two tracks decide whether all power moments of ``nu`` vanish:

* atomic ``nu``: exactly, by merging atoms. ``K`` distinct nonzero points
  give an invertible Vandermonde matrix for moments ``0..K-1``, so all
  moments vanish iff every merged weight does.
* sampled boundary densities: up to a finite order, from quadrature
  moments. This is a necessary check only.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .balayage import circle_mean, quadrature_moments
from .exceptions import AliasRisk, NonRealFrequency
from .expsum import ExpSum, spectral_measure
from .measures import BoundaryDensity, CircleMeasure, cluster_atoms
from .periodize import circle_moments, periodize

DEFAULT_N_MAX = 128
DEFAULT_TOL = 1e-9
TWO_PI = 2 * math.pi


class Method(enum.Enum):
    EXACT_VANDERMONDE = "ExactVandermonde"
    QUADRATURE_MOMENTS = "QuadratureMoments"
    DISCRETE_CLUSTERS = "DiscreteClusters"


@dataclass(frozen=True)
class MomentVector:
    values: np.ndarray

    @property
    def n_max(self) -> int:
        return self.values.size - 1


@dataclass(frozen=True)
class CauchyCoefficients:
    """Taylor coefficients of the Cauchy-type integral ``H`` of a density."""

    a: np.ndarray

    def __call__(self, zeta):
        """Evaluate the truncated series ``sum_n a_n zeta**n``."""
        return np.polynomial.polynomial.polyval(zeta, self.a)


@dataclass(frozen=True)
class CriterionReport:
    verdict: bool
    max_moment_residual: float
    merged_weights: tuple[tuple[complex, complex], ...]
    method: Method
    note: str = ""

    def __bool__(self) -> bool:
        return self.verdict


def moments_atomic(nu: CircleMeasure, n_max: int = DEFAULT_N_MAX) -> MomentVector:
    return MomentVector(circle_moments(nu, n_max))


def _check_order(h: BoundaryDensity, n_max: int):
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if 4 * n_max > h.size:
        raise AliasRisk(f"order {n_max} exceeds M/4 = {h.size // 4} for a grid of {h.size} points")


def moments_density(h: BoundaryDensity, n_max: int = DEFAULT_N_MAX) -> MomentVector:
    _check_order(h, n_max)
    return MomentVector(quadrature_moments(h, n_max))


def cauchy_coefficients(h: BoundaryDensity, n_max: int = DEFAULT_N_MAX) -> CauchyCoefficients:
    """``a_n = (1/M) sum_j (r e^{i t_j})**(-n) h_j`` for ``n = 0..n_max``."""
    _check_order(h, n_max)
    a = np.fft.fft(h.samples)[: n_max + 1] / h.size
    a[0] = circle_mean(h)
    n = np.arange(n_max + 1)
    return CauchyCoefficients(a * np.exp(-n * np.log(h.radius)))


def _relative_residual(points: np.ndarray, weights: np.ndarray, n_max: int) -> float:
    # max_n |sum w a^n| / sum |w| |a|^n over n = 0..n_max
    if weights.size == 0:
        return 0.0
    nu = CircleMeasure(tuple(zip(points, weights)))
    moments = circle_moments(nu, n_max)
    scale = circle_moments(CircleMeasure(tuple(zip(np.abs(points), np.abs(weights)))), n_max).real
    ratio = np.divide(np.abs(moments), scale, out=np.zeros(scale.size), where=scale > 0)
    return float(np.max(ratio))


def vanishing_criterion(nu: CircleMeasure, tol: float = DEFAULT_TOL,
                        merge_tol: float | None = None) -> CriterionReport:
    """Decide whether every power moment of the atomic measure ``nu`` vanishes.

    Atoms are merged within the absolute distance ``merge_tol``, or by
    default when ``|a - b| <= 1e-9 * (1 + max(|a|, |b|))``, and the verdict is true iff every merged weight satisfies
    ``|w| <= tol * (1 + max|input weight|)``. ``max_moment_residual`` is the
    largest relative moment ``|int zeta^n dnu| / int |zeta|^n d|nu|`` over
    ``n = 0..K-1`` for the ``K`` input atoms.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not nu:
        return CriterionReport(True, 0.0, (), Method.EXACT_VANDERMONDE, "empty measure")
    if merge_tol is None:
        merged = tuple(cluster_atoms(nu, 1e-9, relative=True))
    else:
        merged = tuple(cluster_atoms(nu, merge_tol))
    thresh = tol * (1 + float(np.max(np.abs(nu.weights))))
    verdict = all(abs(w) <= thresh for _, w in merged)
    residual = _relative_residual(nu.locations, nu.weights, len(nu) - 1)
    note = (f"{len(merged)} distinct atoms; moments 0..{len(merged) - 1} form an invertible "
            "Vandermonde system, so all moments vanish iff all merged weights vanish")
    return CriterionReport(verdict, residual, merged, Method.EXACT_VANDERMONDE, note)


def vanishing_criterion_density(h: BoundaryDensity, n_max: int = DEFAULT_N_MAX,
                                tol: float = DEFAULT_TOL) -> CriterionReport:
    """Finite-order check that the moments ``0..n_max`` of ``h`` vanish.

    The zeroth moment is ``H(0)`` for the Cauchy-type integral ``H`` of
    ``h``. Orders above ``n_max`` are not examined.
    """
    moments = moments_density(h, n_max).values
    scale = 1 + float(np.mean(np.abs(h.samples)))
    residual = float(np.max(np.abs(moments)))
    verdict = residual <= tol * scale
    note = f"moments 0..{n_max} on a {h.size}-point grid; higher orders unverified"
    return CriterionReport(verdict, residual, (), Method.QUADRATURE_MOMENTS, note)


def _circular_clusters(angles: np.ndarray, tol: float) -> list[list[int]]:
    order = np.argsort(angles, kind="stable")
    clusters: list[list[int]] = []
    for idx in order:
        if clusters and angles[idx] - angles[clusters[-1][-1]] <= tol:
            clusters[-1].append(int(idx))
        else:
            clusters.append([int(idx)])
    if len(clusters) > 1 and angles[clusters[0][0]] + TWO_PI - angles[clusters[-1][-1]] <= tol:
        clusters[0] = clusters.pop() + clusters[0]
    return clusters


def discrete_criterion(g: ExpSum, group_tol: float = DEFAULT_TOL,
                       weight_tol: float = DEFAULT_TOL) -> CriterionReport:
    """Integer-vanishing test for ``sum_k c_k exp(i w_k z)`` with real ``w_k``.

    Here the stored ``omega`` of each term is the real frequency ``w_k``
    that multiplies ``iz``. Frequencies are reduced mod ``2*pi`` and grouped
    within ``group_tol`` on the circle; the sum vanishes on the
    non-negative integers iff every group's coefficient total is zero.
    Merged weights are reported at the circle point ``exp(i w)``.
    """
    for k, w in enumerate(g.omegas):
        if abs(w.imag) > 1e-12:
            raise NonRealFrequency(f"term {k} has non-real frequency {w!r}", index=k)
    if not g:
        return CriterionReport(True, 0.0, (), Method.DISCRETE_CLUSTERS, "empty sum")
    angles = np.mod(g.omegas.real, TWO_PI)
    angles = np.where(angles >= TWO_PI, 0.0, angles)
    coeffs = g.coeffs
    merged = []
    for members in _circular_clusters(angles, group_tol):
        unwrapped = np.unwrap(angles[members])
        rep = float(np.mod(np.mean(unwrapped), TWO_PI))
        merged.append((cmath.exp(1j * rep), complex(np.sum(coeffs[members]))))
    thresh = weight_tol * (1 + float(np.max(np.abs(coeffs))))
    verdict = all(abs(w) <= thresh for _, w in merged)
    residual = _relative_residual(np.exp(1j * angles), coeffs, len(g) - 1)
    note = f"{len(merged)} frequency classes mod 2pi"
    return CriterionReport(verdict, residual, tuple(merged), Method.DISCRETE_CLUSTERS, note)


def real_frequency_form(g: ExpSum) -> ExpSum:
    """Rewrite ``sum c exp(i w z)`` (purely imaginary exponents) with real ``w``.

    Raises NonRealFrequency when some exponent has a real part.
    """
    for k, w in enumerate(g.omegas):
        if abs(w.real) > 1e-12:
            raise NonRealFrequency(f"term {k} has exponent {w!r} off the imaginary axis", index=k)
    return ExpSum(tuple((w.imag, c) for w, c in g.terms))


def pipeline_criterion(g: ExpSum, tol: float = DEFAULT_TOL) -> CriterionReport:
    """Spectral measure, then periodization, then the atomic criterion.

    Periodization is run with zero merge tolerance so that cancelling
    atoms survive into the report as near-zero merged weights.
    """
    nu = periodize(spectral_measure(g), merge_tol=0.0)
    return vanishing_criterion(nu, tol)


def recover_weights(locations, moments) -> np.ndarray:
    """Solve the Vandermonde system ``sum_k w_k a_k**n = m_n``, ``n < K``."""
    a = np.asarray(locations, dtype=complex)
    m = np.asarray(moments, dtype=complex)[: a.size]
    V = np.vander(a, a.size, increasing=True).T
    return np.linalg.solve(V, m)
