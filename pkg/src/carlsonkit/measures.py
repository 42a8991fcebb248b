"""Atomic complex measures and their structural operations.

A measure is stored as a tuple of ``(location, weight)`` pairs of Python
complex numbers. Values are immutable once built; every operation returns
a new measure.
"""

from __future__ import annotations

import cmath
import math
import sys
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .exceptions import EmptyMeasure

Atom = tuple[complex, complex]

DEFAULT_MERGE_TOL = 1e-9


def _as_finite_complex(value, what: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")
    return z


def _normalize_atoms(atoms: Iterable) -> tuple[Atom, ...]:
    out = []
    for i, atom in enumerate(atoms):
        loc, w = atom
        out.append((_as_finite_complex(loc, f"location of atom {i}"),
                    _as_finite_complex(w, f"weight of atom {i}")))
    return tuple(out)


@dataclass(frozen=True)
class _AtomicMeasure:
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", _normalize_atoms(self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __bool__(self) -> bool:
        return bool(self.atoms)

    @cached_property
    def locations(self) -> np.ndarray:
        return np.array([a for a, _ in self.atoms], dtype=complex)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=complex)

    def total_mass(self) -> complex:
        return complex(np.sum(self.weights)) if self.atoms else 0j

    def scaled(self, s: complex):
        """Return the measure with every weight multiplied by ``s``."""
        return type(self)(tuple((a, s * w) for a, w in self.atoms))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(self.atoms + other.atoms)


@dataclass(frozen=True)
class PlanarMeasure(_AtomicMeasure):
    """Atomic spectral measure on the plane of frequencies."""


@dataclass(frozen=True)
class CircleMeasure(_AtomicMeasure):
    """Atomic measure on the punctured plane (no atom at the origin)."""

    def __post_init__(self):
        super().__post_init__()
        for i, (loc, _) in enumerate(self.atoms):
            if loc == 0:
                raise ValueError(f"atom {i} sits at the origin; circle measures carry no mass at 0")


@dataclass(frozen=True)
class BoundaryDensity:
    """Density sampled at ``theta_j = 2*pi*j/M`` on the circle ``|zeta| = radius``.

    Samples are taken with respect to the normalized arc measure
    ``dtheta / 2pi``, so the total mass is the plain mean of ``samples``.
    """

    radius: float
    samples: np.ndarray

    def __post_init__(self):
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise ValueError(f"radius must be positive and finite, got {self.radius!r}")
        h = np.array(self.samples, dtype=complex)
        if h.ndim != 1 or h.size < 4:
            raise ValueError("a boundary density needs at least 4 samples")
        if not np.all(np.isfinite(h)):
            raise ValueError("density samples must be finite")
        h.setflags(write=False)
        object.__setattr__(self, "radius", r)
        object.__setattr__(self, "samples", h)

    @property
    def size(self) -> int:
        return int(self.samples.size)

    @property
    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.size) / self.size

    @property
    def nodes(self) -> np.ndarray:
        return self.radius * np.exp(1j * self.angles)

    @classmethod
    def zeros(cls, radius: float, size: int) -> "BoundaryDensity":
        return cls(radius, np.zeros(size, dtype=complex))

    def __add__(self, other: "BoundaryDensity") -> "BoundaryDensity":
        self._check_compatible(other)
        return BoundaryDensity(self.radius, self.samples + other.samples)

    def __sub__(self, other: "BoundaryDensity") -> "BoundaryDensity":
        self._check_compatible(other)
        return BoundaryDensity(self.radius, self.samples - other.samples)

    def __mul__(self, s: complex) -> "BoundaryDensity":
        return BoundaryDensity(self.radius, complex(s) * self.samples)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundaryDensity):
            return NotImplemented
        return self.radius == other.radius and np.array_equal(self.samples, other.samples)

    __hash__ = None

    def _check_compatible(self, other):
        if self.radius != other.radius or self.size != other.size:
            raise ValueError("densities live on different grids")


def cluster_atoms(m: _AtomicMeasure, tol: float, relative: bool = False) -> list[Atom]:
    """Union atoms whose locations are within ``tol`` (single linkage).

    With ``relative=True`` two locations coincide when
    ``|a - b| <= tol * (1 + max(|a|, |b|))``, which keeps small atoms apart
    when the measure also has atoms of huge modulus.

    Each cluster is placed at the mean of its member locations and carries
    the sum of their weights. Nothing is dropped. Clusters are returned in
    order of their first member.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    n = len(m)
    if n == 0:
        return []
    locs = m.locations
    pts = np.column_stack([locs.real, locs.imag])
    mods = np.abs(locs)
    radius = tol * (1 + float(np.max(mods))) if relative else tol
    pairs = cKDTree(pts).query_pairs(r=radius, output_type="ndarray").reshape(-1, 2)
    if relative and len(pairs):
        i, j = pairs[:, 0], pairs[:, 1]
        keep = np.abs(locs[i] - locs[j]) <= tol * (1 + np.maximum(mods[i], mods[j]))
        pairs = pairs[keep]
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    _, labels = connected_components(graph, directed=False)

    order: dict[int, list[int]] = {}
    for i, lab in enumerate(labels):
        order.setdefault(int(lab), []).append(i)
    out = []
    for members in order.values():
        if len(members) == 1:
            out.append(m.atoms[members[0]])
            continue
        loc = complex(np.mean(locs[members]))
        w = complex(np.sum(m.weights[members]))
        out.append((loc, w))
    return out


def drop_threshold(weights: np.ndarray, tol: float) -> float:
    """Weight magnitude at or below which an atom counts as cancelled."""
    scale = float(np.max(np.abs(weights))) if len(weights) else 0.0
    if scale < sys.float_info.min:
        return tol
    return tol * scale


def merge_atoms(m: CircleMeasure, tol: float = DEFAULT_MERGE_TOL,
                weight_tol: float | None = None, relative: bool = False) -> CircleMeasure:
    """Merge coincident atoms and drop the ones whose weights cancelled.

    Locations within ``tol`` of each other are unioned (see
    :func:`cluster_atoms` for ``relative``). A merged atom is
    dropped when ``|weight| <= weight_tol * max|input weight|``, with
    ``weight_tol`` defaulting to ``tol``; the threshold falls back to the
    absolute ``weight_tol`` when every input weight is subnormal.
    """
    merged = cluster_atoms(m, tol, relative)
    thresh = drop_threshold(m.weights, tol if weight_tol is None else weight_tol)
    return type(m)(tuple((a, w) for a, w in merged if abs(w) > thresh))


def support_radius(m: CircleMeasure) -> float:
    if not m:
        raise EmptyMeasure("measure has no atoms (nu == 0); the vanishing criterion holds trivially")
    return max(abs(a) for a, _ in m.atoms)


def split_interior_boundary(m: CircleMeasure, r: float, tol: float = 0.0):
    """Split into the part inside the open disc of radius ``r - tol`` and the rest.

    Returns ``(interior, boundary)``. Atoms on the rim stay atomic.
    """
    if tol < 0:
        raise ValueError("tol must be non-negative")
    interior, boundary = [], []
    for atom in m.atoms:
        (interior if abs(atom[0]) < r - tol else boundary).append(atom)
    return type(m)(tuple(interior)), type(m)(tuple(boundary))


def principal_arg(z: complex) -> float:
    """Argument of ``z`` folded into ``[-pi, pi)``.

    The negative real axis maps to ``-pi``. Points a rounding error away
    from that axis can land on either side.
    """
    phi = cmath.phase(z)
    return -math.pi if phi == math.pi else phi


def structurally_equal(a: _AtomicMeasure, b: _AtomicMeasure, tol: float = 1e-9) -> bool:
    """True when the atoms of ``a`` and ``b`` pair up within ``tol``.

    Location and weight distances are both measured relative to
    ``1 + max magnitude`` of the respective field.
    """
    if len(a) != len(b):
        return False
    if not a:
        return True
    loc_scale = 1 + max(np.max(np.abs(a.locations)), np.max(np.abs(b.locations)))
    w_scale = 1 + max(np.max(np.abs(a.weights)), np.max(np.abs(b.weights)))
    unused = list(range(len(b)))
    for loc, w in a.atoms:
        for pos, j in enumerate(unused):
            lb, wb = b.atoms[j]
            if abs(loc - lb) <= tol * loc_scale and abs(w - wb) <= tol * w_scale:
                del unused[pos]
                break
        else:
            return False
    return True
