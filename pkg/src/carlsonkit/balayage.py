"""Sweeping interior atoms onto the circle ``|zeta| = r``.

A point mass at ``a`` with ``|a| < r`` is replaced by the Cauchy kernel
density ``r e^{it} / (r e^{it} - a)`` (with respect to ``dt / 2pi``). For
any ``f`` analytic on the closed disc the circle average of ``f`` against
this density is ``f(a)``, so the swept density has the same analytic
moments as the atom.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import AliasRisk, AtomTooClose
from .measures import BoundaryDensity, PlanarMeasure, _AtomicMeasure

DEFAULT_GRID = 4096
DEFAULT_GUARD = 0.95


@dataclass(frozen=True)
class SweepConfig:
    grid_size: int = DEFAULT_GRID
    guard: float = DEFAULT_GUARD

    def __post_init__(self):
        m = self.grid_size
        if m < 64 or m & (m - 1):
            raise ValueError(f"grid_size must be a power of two >= 64, got {m}")
        if not 0 < self.guard < 1:
            raise ValueError("guard must lie in (0, 1)")


def _check_atom(a: complex, r: float, guard: float, index=None):
    ratio = abs(a) / r
    if ratio >= 1:
        raise ValueError(f"atom {a!r} is not inside the disc of radius {r}")
    if ratio > guard:
        where = "" if index is None else f" (atom {index})"
        raise AtomTooClose(
            f"|a|/r = {ratio:.6g} exceeds guard {guard:g}{where}; "
            "kernel decay is too slow for the grid, raise the grid size and the guard",
            index=index, ratio=ratio)


def _kernel(a: complex, nodes: np.ndarray) -> np.ndarray:
    return nodes / (nodes - a)


def sweep_atom(a: complex, r: float, M: int = DEFAULT_GRID, guard: float = DEFAULT_GUARD) -> BoundaryDensity:
    """Cauchy kernel density of a unit atom at ``a``, sampled on ``M`` nodes."""
    a = complex(a)
    _check_atom(a, r, guard)
    h = BoundaryDensity.zeros(r, M)
    return BoundaryDensity(r, _kernel(a, h.nodes))


def _atoms(m) -> _AtomicMeasure:
    # interior parts may hold an atom at the origin, which CircleMeasure forbids
    return m if isinstance(m, _AtomicMeasure) else PlanarMeasure(tuple(m))


def sweep_measure(nu_int, r: float, M: int = DEFAULT_GRID,
                  guard: float = DEFAULT_GUARD) -> BoundaryDensity:
    """Weighted sum of the kernel densities of all atoms of ``nu_int``.

    ``nu_int`` is any atomic measure or a sequence of ``(a, c)`` pairs;
    an atom at the centre is allowed and sweeps to a constant density.
    """
    nu_int = _atoms(nu_int)
    out = BoundaryDensity.zeros(r, M)
    for k, (a, _) in enumerate(nu_int.atoms):
        _check_atom(a, r, guard, index=k)
    nodes = out.nodes
    total = np.zeros(M, dtype=complex)
    for a, c in nu_int.atoms:
        total += c * _kernel(a, nodes)
    return BoundaryDensity(r, total)


def circle_mean(h: BoundaryDensity) -> complex:
    """Total mass of ``h`` under the normalized arc measure."""
    return complex(np.mean(h.samples))


def quadrature_moments(h: BoundaryDensity, n_max: int) -> np.ndarray:
    """Trapezoidal circle moments ``(1/M) sum_j (r e^{i t_j})^n h_j``.

    Uses an inverse FFT; the ``1/M`` normalization of ``numpy.fft.ifft``
    matches the arc measure exactly. The zeroth entry is replaced by
    :func:`circle_mean` so that every zeroth-order quantity shares one
    summation.
    """
    spectrum = np.fft.ifft(h.samples)[: n_max + 1]
    spectrum[0] = circle_mean(h)
    n = np.arange(n_max + 1)
    return spectrum * np.exp(n * np.log(h.radius))


def verify_sweep(nu_int, h: BoundaryDensity, n_max: int) -> float:
    """Largest normalized moment error of ``h`` against the atoms it replaced.

    The error at order n is divided by ``1 + sum_k |c_k| r**n``.
    """
    nu_int = _atoms(nu_int)
    if h.size < 4 * n_max:
        raise AliasRisk(f"grid of {h.size} points cannot certify order {n_max} (need M >= 4 n_max)")
    n = np.arange(n_max + 1)
    r = h.radius
    quad = quadrature_moments(h, n_max)
    locs, w = nu_int.locations, nu_int.weights
    if len(nu_int):
        exact = (locs[None, :] ** n[:, None]) @ w
        scale = 1 + np.sum(np.abs(w)) * r ** n
    else:
        exact = np.zeros(n.size, dtype=complex)
        scale = np.ones(n.size)
    return float(np.max(np.abs(quad - exact) / scale))
