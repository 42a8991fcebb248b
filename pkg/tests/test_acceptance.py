"""Exit criteria: one test per criterion, each reporting a PASS/FAIL line."""

import cmath
import math
import time
from collections import defaultdict

import numpy as np
import pytest

from carlsonkit import (CircleMeasure, ExpSum, PlanarMeasure, dichotomy_check, direct_integer_vanishing,
                        discrete_criterion, evaluate, moments_atomic, moments_density, periodize,
                        pipeline_criterion, serialize_document, sweep_measure, vanishing_criterion,
                        verify_sweep)
from carlsonkit.cli import EXIT_DISAGREE, main
from carlsonkit.measures import structurally_equal

from conftest import ACCEPTANCE_LINES
from corpus import (as_expsum, as_real_form, interior_measure, real_frequency_corpus, separated_points,
                    unit_box)

CORPUS_SEED = 20261014


def record(cid, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {cid} {title}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def corpus():
    return real_frequency_corpus(CORPUS_SEED, n_random=200, n_vanishing=50)


def records(text):
    return dict(line.partition(" ")[::2] for line in text.splitlines())


def test_c1_carlson_constant(tmp_path, capsys):
    path = tmp_path / "sin.txt"
    path.write_text(serialize_document(ExpSum.sin_pi()))
    t0 = time.perf_counter()
    code = main(["growth", str(path), "--y-max", "100", "--format", "records"])
    elapsed = time.perf_counter() - t0
    rate = float(records(capsys.readouterr().out)["growth.rate"])
    closed = math.pi - math.log(2) / 100
    ok = (code == 0 and math.pi - 0.008 <= rate <= math.pi and abs(rate - closed) <= 5e-4
          and elapsed < 1.0)
    record("C1", "Carlson constant", ok,
           f"rate={rate:.9f} closed_form={closed:.9f} runtime={elapsed:.3f}s")


def test_c2_criterion_equivalence(corpus, tmp_path, capsys):
    t0 = time.perf_counter()
    mismatches, exits = [], defaultdict(int)
    vanishing = 0
    for i, case in enumerate(corpus):
        g = as_expsum(case)
        d = discrete_criterion(as_real_form(case)).verdict
        p = pipeline_criterion(g).verdict
        x = direct_integer_vanishing(g, 30, 1e-9).verdict
        vanishing += d
        if not d == p == x:
            mismatches.append((i, d, p, x))
        path = tmp_path / f"case{i}.txt"
        path.write_text(serialize_document(g))
        exits[main(["check", str(path), "--mode", "both", "--format", "records"])] += 1
    capsys.readouterr()
    elapsed = time.perf_counter() - t0
    constructed_ok = all(discrete_criterion(as_real_form(c)).verdict for c in corpus[200:])
    ok = (not mismatches and exits[EXIT_DISAGREE] == 0 and constructed_ok and len(corpus) == 250
          and elapsed < 10.0)
    record("C2", "criterion equivalence", ok,
           f"{len(corpus)} sums, {vanishing} vanishing, mismatches={mismatches[:3]}, "
           f"exit codes={dict(sorted(exits.items()))}, runtime={elapsed:.2f}s")


def test_c3_balayage_accuracy():
    t0 = time.perf_counter()
    half = CircleMeasure(((0.5, 1),))
    err_half = verify_sweep(half, sweep_measure(half, 1.0, 1024), 16)
    near = CircleMeasure(((0.9, 1),))
    err64 = verify_sweep(near, sweep_measure(near, 1.0, 64), 16)
    err1024 = verify_sweep(near, sweep_measure(near, 1.0, 1024), 16)
    elapsed = time.perf_counter() - t0
    ratio = err64 / max(err1024, np.finfo(float).tiny)
    ok = err_half <= 1e-10 and ratio >= 1e6 and elapsed < 1.0
    record("C3", "balayage accuracy", ok,
           f"err(0.5,M=1024)={err_half:.2e} err(0.9,M=64)={err64:.2e} err(0.9,M=1024)={err1024:.2e} "
           f"ratio={ratio:.2e} runtime={elapsed:.3f}s")


def test_c4_moment_path_consistency():
    rng = np.random.default_rng(CORPUS_SEED + 4)
    worst = 0.0
    for _ in range(50):
        r = float(rng.uniform(0.5, 2.0))
        nu = CircleMeasure(tuple(interior_measure(rng, r=r, max_atoms=5, max_ratio=0.9)))
        atomic = moments_atomic(nu, 32).values
        dens = moments_density(sweep_measure(nu, r, 4096), 32).values
        scale = np.sum(np.abs(nu.weights)) * r ** np.arange(33)
        worst = max(worst, float(np.max(np.abs(atomic - dens) / scale)))
    record("C4", "moment-path consistency", worst <= 1e-8, f"50 measures, max relative gap={worst:.2e}")


def brute_merged(atoms):
    groups = defaultdict(complex)
    for a, w in atoms:
        groups[a] += w
    return groups


def test_c5_vandermonde_oracle():
    rng = np.random.default_rng(CORPUS_SEED + 5)
    agree = 0
    zero_cases = 0
    failures = []
    for trial in range(100):
        k = int(rng.integers(1, 9))
        pts = separated_points(rng, k)
        kind = trial % 3
        atoms = []
        for j, a in enumerate(pts):
            w = complex(unit_box(rng))
            if kind == 0 or (kind == 1 and j > 0):
                split = float(rng.uniform(0.1, 0.9))
                atoms += [(a, split * w), (a, (1 - split) * w), (a, -w)]
            else:
                atoms.append((a, w if abs(w) > 0.1 else 0.5))
        order = rng.permutation(len(atoms))
        atoms = [atoms[i] for i in order]
        nu = CircleMeasure(tuple(atoms))
        scale = max(abs(w) for _, w in atoms)

        merged = brute_merged(atoms)
        weights_zero = all(abs(w) <= 1e-10 * scale for w in merged.values())

        distinct = len(merged)
        moments = moments_atomic(nu, distinct - 1).values
        naive = [sum(w * a ** n for a, w in atoms) for n in range(distinct)]
        termwise = [sum(abs(w) * abs(a) ** n for a, w in atoms) for n in range(distinct)]
        moments_zero = all(abs(m) <= 1e-8 * s for m, s in zip(moments, termwise))
        naive_ok = np.allclose(moments, naive, rtol=0, atol=1e-12 * max(termwise))

        verdict = vanishing_criterion(nu).verdict
        zero_cases += weights_zero
        if weights_zero == moments_zero == verdict and naive_ok:
            agree += 1
        else:
            failures.append(trial)
    ok = agree == 100 and 0 < zero_cases < 100
    record("C5", "Vandermonde oracle", ok,
           f"{agree}/100 agree ({zero_cases} all-zero), failures={failures[:5]}")


def test_c6_dichotomy_corpus(corpus):
    sums = [as_expsum(c) for c in corpus]
    sums += [ExpSum.sin_pi(), ExpSum(((1 + 2j * math.pi, 1), (1, -1))), ExpSum(((0, 1),))]
    checked, worst = 0, math.inf
    violations = []
    for i, g in enumerate(sums):
        rep = dichotomy_check(g, y_max=100)
        if rep.vanishes and not rep.is_trivial:
            checked += 1
            worst = min(worst, rep.growth.rate)
            if rep.growth.rate < math.pi - 0.05:
                violations.append((i, rep.growth.rate))
    one = dichotomy_check(ExpSum(((0, 1),)), y_max=100)
    witness = not one.vanishes and abs(one.growth.rate) <= 1e-12
    ok = checked >= 50 and not violations and witness
    record("C6", "dichotomy corpus", ok,
           f"{checked} nontrivial vanishing sums, min rate={worst:.4f} (bound {math.pi - 0.05:.4f}), "
           f"g=1 rate={one.growth.rate:.1e}, violations={violations[:3]}")


def test_c7_periodization_identities():
    rng = np.random.default_rng(CORPUS_SEED + 7)
    bad = []
    for _ in range(20):
        omega = complex(rng.uniform(-2, 2), rng.uniform(-math.pi, math.pi))
        c = complex(unit_box(rng))
        base = periodize(PlanarMeasure(((omega, c),)))
        for k in range(-10, 11):
            shifted = periodize(PlanarMeasure(((omega + 2j * math.pi * k, c),)))
            if not structurally_equal(base, shifted, 1e-9):
                bad.append((omega, k))
    tele = ExpSum(((1 + 2j * math.pi, 1), (1, -1)))
    nu = periodize(PlanarMeasure(tele.terms))
    g_half = evaluate(tele, 0.5)
    closed = abs(cmath.exp(0.5) * (cmath.exp(1j * math.pi) - 1))
    ok = not bad and len(nu) == 0 and abs(abs(g_half) - closed) <= 1e-12 and abs(g_half) > 1
    record("C7", "periodization identities", ok,
           f"420 shifted pairs, mismatches={len(bad)}; telescoping nu atoms={len(nu)}, |g(0.5)|={abs(g_half):.6f}")


def test_c8_scale_invariance(corpus):
    rng = np.random.default_rng(CORPUS_SEED + 8)
    changed = []
    for s_mag in (1e-6, 1e-3, 1e3, 1e6):
        s = s_mag * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        for i, case in enumerate(corpus):
            real, g = as_real_form(case), as_expsum(case)
            base = (discrete_criterion(real).verdict, pipeline_criterion(g).verdict,
                    direct_integer_vanishing(g, 30).verdict)
            scaled = (discrete_criterion(real.scaled(s)).verdict, pipeline_criterion(g.scaled(s)).verdict,
                      direct_integer_vanishing(g.scaled(s), 30).verdict)
            if base != scaled:
                changed.append((s_mag, i))
    record("C8", "scale invariance", not changed,
           f"{4 * len(corpus)} scaled instances x 3 criteria, changed verdicts={changed[:5]}")
