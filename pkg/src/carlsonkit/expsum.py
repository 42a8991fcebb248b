"""Finite exponential sums ``g(z) = sum_k c_k exp(omega_k z)``.

Everything here works in log-magnitude form: the largest real exponent is
factored out before summing so that intermediate terms never overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.special import logsumexp

from .exceptions import DegenerateSum
from .measures import PlanarMeasure, _normalize_atoms

DEFAULT_Y_MIN = 1.0
DEFAULT_Y_MAX = 100.0
DEFAULT_GROWTH_SAMPLES = 512


@dataclass(frozen=True)
class ExpSum:
    """A finite exponential sum given by its ``(omega, coeff)`` terms."""

    terms: tuple[tuple[complex, complex], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize_atoms(self.terms))

    @classmethod
    def from_real_frequencies(cls, freqs: Iterable[float], coeffs: Iterable[complex]) -> "ExpSum":
        """Build ``sum_k c_k exp(i w_k z)`` from real frequencies ``w_k``."""
        return cls(tuple((1j * float(w), c) for w, c in zip(freqs, coeffs, strict=True)))

    @classmethod
    def sin_pi(cls) -> "ExpSum":
        """``sin(pi z)`` written as two exponentials."""
        return cls(((1j * math.pi, -0.5j), (-1j * math.pi, 0.5j)))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    @cached_property
    def omegas(self) -> np.ndarray:
        return np.array([w for w, _ in self.terms], dtype=complex)

    @cached_property
    def coeffs(self) -> np.ndarray:
        return np.array([c for _, c in self.terms], dtype=complex)

    def scaled(self, s: complex) -> "ExpSum":
        return ExpSum(tuple((w, s * c) for w, c in self.terms))

    def __add__(self, other: "ExpSum") -> "ExpSum":
        return ExpSum(self.terms + other.terms)

    def coefficient_l1(self) -> float:
        return float(np.sum(np.abs(self.coeffs)))

    def __call__(self, z):
        return evaluate(self, z)


def _log_terms(g: ExpSum, z: np.ndarray) -> np.ndarray:
    # shape (len(z), K): complex logarithms of each term c_k exp(omega_k z)
    with np.errstate(divide="ignore"):
        log_c = np.log(g.coeffs)
    return log_c[None, :] + np.multiply.outer(z, g.omegas)


def log_abs(g: ExpSum, z) -> np.ndarray:
    """``ln|g(z)|`` via log-sum-exp; ``-inf`` where the sum cancels exactly."""
    z = np.asarray(z, dtype=complex)
    if not g:
        return np.full(z.shape, -np.inf)
    flat = z.reshape(-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = logsumexp(_log_terms(g, flat), axis=1).real
    out = np.where(np.isnan(out), -np.inf, out)
    return out.reshape(z.shape)


def log_termwise_scale(g: ExpSum, z) -> np.ndarray:
    """``ln sum_k |c_k exp(omega_k z)|``, the conditioning scale of ``g(z)``."""
    z = np.asarray(z, dtype=complex)
    if not g:
        return np.full(z.shape, -np.inf)
    flat = z.reshape(-1)
    with np.errstate(divide="ignore"):
        out = logsumexp(_log_terms(g, flat).real, axis=1)
    return out.reshape(z.shape)


def evaluate(g: ExpSum, z):
    """Evaluate ``g`` at ``z`` (scalar or array).

    Raises OverflowError if the value itself exceeds double range.
    """
    zz = np.asarray(z, dtype=complex)
    scalar = zz.ndim == 0
    flat = zz.reshape(-1)
    if not g:
        out = np.zeros(flat.shape, dtype=complex)
    else:
        logs = _log_terms(g, flat)
        shift = np.max(logs.real, axis=1)
        shift = np.where(np.isfinite(shift), shift, 0.0)
        with np.errstate(over="ignore", invalid="ignore"):
            s = np.sum(np.exp(logs - shift[:, None]), axis=1)
            out = s * np.exp(shift)
        if not np.all(np.isfinite(out)):
            raise OverflowError("exponential sum exceeds double range")
    return complex(out[0]) if scalar else out.reshape(zz.shape)


eval = evaluate  # noqa: A001


@dataclass(frozen=True)
class IntegerVanishing:
    """Result of checking ``g(n) = 0`` for ``n = 0..n_max``.

    ``relative`` holds ``|g(n)| / sum_k |c_k exp(omega_k n)|`` per n.
    """

    verdict: bool
    relative: np.ndarray
    witness: int | None

    def __bool__(self) -> bool:
        return self.verdict


def direct_integer_vanishing(g: ExpSum, n_max: int = 30, rel_tol: float = 1e-9) -> IntegerVanishing:
    """Check vanishing on ``0..n_max`` by direct evaluation.

    ``n = 0`` stands for the limit of ``g`` at the origin, which for a
    finite sum is just the coefficient total.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    n = np.arange(n_max + 1, dtype=float)
    if not g:
        return IntegerVanishing(True, np.zeros(n.size), None)
    with np.errstate(invalid="ignore"):
        rel = np.exp(log_abs(g, n) - log_termwise_scale(g, n))
    rel = np.nan_to_num(rel, nan=0.0)
    bad = np.flatnonzero(rel > rel_tol)
    witness = int(bad[0]) if bad.size else None
    return IntegerVanishing(witness is None, rel, witness)


def spectral_measure(g: ExpSum) -> PlanarMeasure:
    """The atomic measure ``sum_k c_k delta_{omega_k}``; no merging."""
    return PlanarMeasure(g.terms)


@dataclass(frozen=True)
class GrowthEstimate:
    rate: float
    y_max: float
    samples_used: int


@dataclass(frozen=True)
class IndicatorEstimate:
    theta: float
    value: float
    r_max: float


def growth_rate_imaginary(g: ExpSum, y_min: float = DEFAULT_Y_MIN, y_max: float = DEFAULT_Y_MAX,
                          n_samples: int = DEFAULT_GROWTH_SAMPLES) -> GrowthEstimate:
    """Largest ``ln|g(iy)| / |y|`` over a geometric grid on ``±[y_min, y_max]``.

    For finite sums the ratio converges as ``|y|`` grows, so the result is a
    finite-window estimate of the limsup. Both endpoints are sampled.
    """
    if not g:
        raise DegenerateSum("growth rate of an empty sum is undefined")
    if not 0 < y_min < y_max:
        raise ValueError("need 0 < y_min < y_max")
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    y = np.geomspace(y_min, y_max, n_samples)
    y = np.concatenate([y, -y])
    ratios = log_abs(g, 1j * y) / np.abs(y)
    return GrowthEstimate(float(np.max(ratios)), float(y_max), int(y.size))


def estimate_indicator(g: ExpSum, theta: float, r_max: float = 100.0,
                       n_samples: int = 256) -> IndicatorEstimate:
    """Largest ``ln|g(r e^{i theta})| / r`` for ``r`` in ``[r_max/2, r_max]``."""
    if not g:
        raise DegenerateSum("indicator of an empty sum is undefined")
    if not -math.pi / 2 <= theta <= math.pi / 2:
        raise ValueError("theta must lie in [-pi/2, pi/2]")
    if r_max <= 0:
        raise ValueError("r_max must be positive")
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    r = np.linspace(r_max / 2, r_max, n_samples)
    ratios = log_abs(g, r * np.exp(1j * theta)) / r
    return IndicatorEstimate(float(theta), float(np.max(ratios)), float(r_max))
