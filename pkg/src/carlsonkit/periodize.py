"""Push a planar spectral measure forward under ``omega -> exp(omega)``."""

from __future__ import annotations

import cmath

import numpy as np

from .measures import CircleMeasure, PlanarMeasure, merge_atoms

MAX_REAL_EXPONENT = 700.0
# relative weight below which a merged atom counts as cancelled
CANCEL_TOL = 1e-12
DEFAULT_REL_MERGE_TOL = 1e-9


def periodize(mu: PlanarMeasure, merge_tol: float | None = None,
              cancel_tol: float = CANCEL_TOL) -> CircleMeasure:
    """Circular periodization of ``mu``.

    Atoms whose frequencies differ by multiples of ``2*pi*i`` land on the
    same point and are merged. Coincidence is judged by distance in the
    image plane: by default two images coincide when
    ``|a - b| <= 1e-9 * (1 + max(|a|, |b|))``; an explicit ``merge_tol`` is
    an absolute distance. Merged atoms with ``|w| <= cancel_tol * max|c|``
    are dropped.
    """
    if merge_tol is not None and merge_tol < 0:
        raise ValueError("merge_tol must be non-negative")
    atoms = []
    for i, (omega, c) in enumerate(mu.atoms):
        if omega.real > MAX_REAL_EXPONENT:
            raise OverflowError(f"atom {i}: Re(omega) = {omega.real:g} overflows exp")
        atoms.append((cmath.exp(omega), c))
    nu = CircleMeasure(tuple(atoms))
    if merge_tol is None:
        return merge_atoms(nu, DEFAULT_REL_MERGE_TOL, cancel_tol, relative=True)
    return merge_atoms(nu, merge_tol, cancel_tol)


def _power_sums(log_base: np.ndarray, weights: np.ndarray, n: np.ndarray) -> np.ndarray:
    # sum_k w_k exp(n * log_base_k), factoring out the largest real exponent per n
    if weights.size == 0:
        return np.zeros(n.size, dtype=complex)
    with np.errstate(divide="ignore"):
        logs = np.multiply.outer(n, log_base) + np.log(weights)[None, :]
    shift = np.max(logs.real, axis=1)
    shift = np.where(np.isfinite(shift), shift, 0.0)
    return np.sum(np.exp(logs - shift[:, None]), axis=1) * np.exp(shift)


def planar_moments(mu: PlanarMeasure, n_max: int) -> np.ndarray:
    """``int exp(n omega) dmu`` for ``n = 0..n_max``; equals ``g(n)``."""
    return _power_sums(mu.locations, mu.weights, np.arange(n_max + 1, dtype=float))


def circle_moments(nu: CircleMeasure, n_max: int) -> np.ndarray:
    """``int zeta**n dnu`` for ``n = 0..n_max``."""
    return _power_sums(np.log(nu.locations), nu.weights, np.arange(n_max + 1, dtype=float))


def moment_pushforward_check(mu: PlanarMeasure, nu: CircleMeasure, n_max: int) -> float:
    """Largest absolute gap between the moments of ``mu`` and of ``nu``.

    If ``nu = periodize(mu)`` the two moment sequences coincide, which is
    why vanishing of ``g`` on the integers and vanishing of the power
    moments of ``nu`` are the same condition.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    gap = np.abs(planar_moments(mu, n_max) - circle_moments(nu, n_max))
    return float(np.max(gap))
