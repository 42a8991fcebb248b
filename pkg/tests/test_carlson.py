import math

import numpy as np
import pytest

from carlsonkit import (CircleMeasure, EmptyMeasure, ExpSum, PlanarMeasure, arg_support_range,
                        dichotomy_check, merge_atoms, periodize, representation_chain, spectral_band,
                        spectral_measure, vanishing_criterion)
from carlsonkit.carlson import is_identically_zero


def test_spectral_band_examples(sin_pi):
    band = spectral_band(spectral_measure(sin_pi))
    assert (band.b_lower, band.b_upper) == (-math.pi, math.pi)
    band = spectral_band(PlanarMeasure(((2, 1),)))
    assert (band.b_lower, band.b_upper) == (0, 0)
    band = spectral_band(PlanarMeasure(((1 + 1j, 1), (1 - 3j, 2))))
    assert (band.b_lower, band.b_upper) == (-3, 1)
    with pytest.raises(EmptyMeasure):
        spectral_band(PlanarMeasure())


def test_arg_range_examples():
    rng = arg_support_range(CircleMeasure(((2j, 1),)))
    assert rng.arg_min == rng.arg_max == pytest.approx(math.pi / 2)
    rng = arg_support_range(CircleMeasure(((1, 1), (-1 + 0j, 1))))
    assert (rng.arg_min, rng.arg_max) == (-math.pi, 0)
    assert not rng.avoids_cut()
    rng = arg_support_range(CircleMeasure(((math.e, 1),)))
    assert (rng.arg_min, rng.arg_max) == (0, 0)
    with pytest.raises(EmptyMeasure):
        arg_support_range(CircleMeasure())


def test_spectral_band_ignores_cancelled_atoms():
    mu = PlanarMeasure(((0.5j, 1), (-0.2j, 2)))
    nu = periodize(mu + PlanarMeasure(((0.3j, 1), (0.3j, -1))))
    assert len(nu) == 2
    band = spectral_band(PlanarMeasure(tuple((complex(0, np.angle(a)), w) for a, w in nu.atoms)))
    assert band.b_lower == pytest.approx(-0.2) and band.b_upper == pytest.approx(0.5)


def test_dichotomy_sin(sin_pi):
    rep = dichotomy_check(sin_pi, y_max=100, tol=0.02)
    assert rep.vanishes and not rep.is_trivial and rep.carlson_bound_met
    assert rep.growth.rate == pytest.approx(math.pi - math.log(2) / 100, abs=1e-6)


def test_dichotomy_constant(constant_one):
    rep = dichotomy_check(constant_one)
    assert not rep.vanishes and rep.carlson_bound_met is None
    assert rep.growth.rate == pytest.approx(0, abs=1e-12)


def test_dichotomy_telescoping(telescoping):
    rep = dichotomy_check(telescoping, y_max=100, tol=0.02)
    assert rep.vanishes and not rep.is_trivial and rep.carlson_bound_met
    # |g(iy)| = e^... |e^{-2 pi y} - 1|, so along y -> -inf the rate tends to 2 pi
    y = 100.0
    oracle = (2 * math.pi * y + math.log1p(-math.exp(-2 * math.pi * y))) / y
    assert rep.growth.rate == pytest.approx(oracle, abs=1e-9)


def test_trivial_sum_is_detected():
    g = ExpSum(((1j, 2 - 1j), (1j, -2 + 1j), (0.5, 0.25), (0.5, -0.25)))
    assert is_identically_zero(g)
    rep = dichotomy_check(g)
    assert rep.vanishes and rep.is_trivial and rep.carlson_bound_met is None


def test_contrapositive_geometry():
    # spectrum strictly inside the band (-pi, pi): vanishing forces all merged weights to cancel
    rng = np.random.default_rng(17)
    hits = 0
    for trial in range(100):
        k = int(rng.integers(1, 5))
        freqs = rng.uniform(-3, 3, k)
        coeffs = rng.normal(size=k) + 1j * rng.normal(size=k)
        if trial % 2:
            freqs = np.concatenate([freqs, freqs])
            coeffs = np.concatenate([coeffs, -coeffs])
        g = ExpSum.from_real_frequencies(freqs, coeffs)
        mu = spectral_measure(g)
        assert spectral_band(mu).strictly_inside()
        nu = periodize(mu, merge_tol=0.0)
        if nu:
            assert arg_support_range(nu).avoids_cut()
        rep = vanishing_criterion(nu)
        if rep.verdict:
            hits += 1
            assert len(merge_atoms(nu)) == 0
            assert is_identically_zero(g)
    assert hits == 50


def test_representation_chain_integer_points():
    g = ExpSum(((0.1 + 0.4j, 1.0), (-0.7 + 2.0j, -0.5j), (-1.2 - 1.0j, 2.0), (0.1 + 0.4j + 2j * math.pi, 0.3)))
    chain = representation_chain(g, n_max=16, M=4096)
    assert chain.radius == pytest.approx(math.exp(0.1))
    n = np.arange(17)
    scale = sum(abs(c) * np.exp(w.real * n) for w, c in g.terms)
    assert chain.max_relative_gap(scale) <= 1e-9


def test_representation_chain_of_vanishing_sum(sin_pi):
    chain = representation_chain(sin_pi, 8)
    assert np.allclose(chain.direct, 0, atol=1e-14)
    assert np.all(chain.swept == 0)
