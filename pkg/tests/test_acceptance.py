"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line."""

import math
import time

import numpy as np
import pytest
from scipy.special import iv

from aftkit.analytic import BoundaryFunction, catalog as analytic_catalog, inverse_z, taylor_coeff_unit
from aftkit.counting import OpCountLedger
from aftkit.inversion import SequenceEvaluator, invert
from aftkit.muregular import MuRegularSpec, analytic_limit_coeffs, muregular_coeffs_recursive, muregular_function
from aftkit.numtheory import build_mobius_table, divisor_mu_sum, mu_over_n_partial
from aftkit.oracle import brute_mobius, circle_coefficient, quadrature_fourier, quadrature_mean
from aftkit.periodic import (
    PeriodicSignal,
    aft_cosine,
    aft_sine,
    catalog as periodic_catalog,
    wintner_coeff_irrational,
    wintner_integral_irrational,
)
from aftkit.sigproc import HarmonicSignal, aft_cos_sin, benchmark_vs_dft, divisor_pair_count
from aftkit.stepfn import (
    EvenStepFunction,
    bernoulli_identity_check,
    davenport_checkpoints,
    indicator_cosine_exact,
    indicator_trajectory,
    normalize_step,
    step_cosine_coeff,
)


def test_01_sieve_matches_brute_force(criterion):
    start = time.perf_counter()
    t = build_mobius_table(10**5)
    elapsed = time.perf_counter() - start
    brute = np.array([brute_mobius(n) for n in range(1, 10**5 + 1)])
    mismatches = int(np.count_nonzero(t.mu[1:] != brute))
    ok = mismatches == 0 and elapsed < 5.0
    criterion(1, "sieve equals trial division for n <= 1e5 in < 5 s", ok,
              f"mismatches={mismatches}, sieve {elapsed:.3f} s")
    assert ok


def test_02_divisor_sum(criterion, small_table):
    bad = [n for n in range(2, 10**4 + 1) if divisor_mu_sum(n, small_table) != 0]
    ok = divisor_mu_sum(1, small_table) == 1 and not bad
    criterion(2, "sum of mu over divisors is [n == 1] for n <= 1e4", ok, f"violations={len(bad)}")
    assert ok


def test_03_inversion_round_trip(criterion, small_table):
    rng = np.random.default_rng(42)
    K = 60
    worst = 0.0
    for _ in range(200):
        # enough terms that the K-term fold at n <= 8 never runs off the end
        vals = rng.uniform(-1, 1, K * 8) * 0.6 ** np.arange(1, K * 8 + 1)
        b = SequenceEvaluator.fold_of(SequenceEvaluator.from_values(vals), K)
        for n in range(1, 9):
            worst = max(worst, abs(invert(b, n, K, small_table) - vals[n - 1]))
    ok = worst < 1e-8
    criterion(3, "200 geometric round trips at K=60 within 1e-8", ok, f"max error={worst:.2e}")
    assert ok


def test_04_band_limited_exactness(criterion, small_table):
    rng = np.random.default_rng(42)
    elapsed = 0.0
    worst = 0.0
    for _ in range(40):
        D = int(rng.integers(1, 33))
        f = periodic_catalog("trigpoly", rng.normal(size=D), rng.normal(size=D))
        for n in range(1, D + 1):
            qa, qb = quadrature_fourier(f, n)
            # folds vanish once kn > D, so D // n terms are exact
            start = time.perf_counter()
            a = aft_cosine(f, n, D // n, small_table).value
            b = aft_sine(f, n, D // n, small_table).value
            elapsed += time.perf_counter() - start
            worst = max(worst, abs(a - qa), abs(b - qb))
    ok = worst < 1e-9 and elapsed < 10.0
    criterion(4, "trig polynomials of degree <= 32 exact within 1e-9 in < 10 s", ok,
              f"max error={worst:.2e}, extraction {elapsed:.2f} s")
    assert ok


def test_05_taylor_and_z(criterion, small_table):
    f = BoundaryFunction.from_callable(lambda z: z / (2 - np.asarray(z, dtype=complex)))
    X = BoundaryFunction.from_callable(lambda z: 0.4 / (np.asarray(z, dtype=complex) - 0.4))
    errs_t = [abs(taylor_coeff_unit(f, n, 40, small_table).value - 2.0**-n) for n in range(1, 7)]
    errs_z = [abs(inverse_z(X, n, 40, small_table, roc_radius=0.4).value - 0.4**n) for n in range(1, 7)]
    ok = max(errs_t) < 1e-8 and max(errs_z) < 1e-8
    criterion(5, "Taylor z/(2-z) and inverse Z 0.4/(z-0.4) within 1e-8 for n <= 6", ok,
              f"taylor max={max(errs_t):.2e}, z max={max(errs_z):.2e}")
    assert ok


def test_06_truncation_bound(criterion, small_table):
    cases = below = 0
    violations = []
    for f in (analytic_catalog("geom_disk", 0.5), analytic_catalog("geom_disk", 0.3), analytic_catalog("expm1")):
        for n in range(1, 7):
            truth = circle_coefficient(f.func, n, radius=0.5) / 0.5**n
            for K in (5, 10, 20, 40):
                res = taylor_coeff_unit(f, n, K, small_table)
                err = abs(res.value - truth)
                cases += 1
                below += err < res.bound
                if err > res.bound:
                    violations.append((f.name, n, K))
    frac = below / cases
    ok = not violations and frac >= 0.9
    criterion(6, "error <= C/(n^2 K) everywhere, strictly below in >= 90%", ok,
              f"{below}/{cases} strictly below, violations={len(violations)}")
    assert ok


def test_07_sample_sum_identity(criterion):
    rng = np.random.default_rng(42)
    bs = rng.uniform(0, math.pi, 1000)
    bs[bs == 0] = 1e-3
    Ns = rng.integers(1, 10**4 + 1, 1000)
    worst = max(bernoulli_identity_check(float(b), int(N)) for b, N in zip(bs, Ns))
    ok = worst < 1e-9
    criterion(7, "F_N = -2{bN/2pi} over 1000 random pairs within 1e-9", ok, f"max deviation={worst:.2e}")
    assert ok


def test_08_davenport_trend(criterion, table):
    start = time.perf_counter()
    rows = davenport_checkpoints(0.25, [10**3, 10**4, 10**5], table)
    elapsed = time.perf_counter() - start
    dev = [abs(p + 1 / math.pi) for _, p in rows]
    ok = dev[0] > dev[1] > dev[2] and dev[2] < 0.05 and elapsed < 30.0
    criterion(8, "Davenport deviation at theta=1/4 shrinks over K=1e3,1e4,1e5 and < 0.05", ok,
              ", ".join(f"{d:.2e}" for d in dev) + f", {elapsed:.2f} s")
    assert ok


def test_09_step_coefficient(criterion, table):
    f = normalize_step(EvenStepFunction.indicator(1.0))
    details = []
    ok = True
    for n in (1, 2, 3):
        exact = indicator_cosine_exact(1.0, n)
        dev = np.abs(indicator_trajectory(1.0, n, 10**5, table) - exact)
        # envelope over each decade [10^j, 10^{j+1}]
        env = [dev[10**j - 1 : 10 ** (j + 1)].max() for j in (3, 4)]
        point = [abs(step_cosine_coeff(f, n, K, table).value - exact) for K in (10**3, 10**4, 10**5)]
        ok_n = env[1] < env[0] and point[2] < point[0]
        ok = ok and ok_n
        details.append(f"n={n}: envelope {env[0]:.1e}->{env[1]:.1e}, at K=1e3,1e4,1e5 "
                       + "/".join(f"{p:.1e}" for p in point))
    criterion(9, "step coefficient deviation for b=1, n<=3 decreases over K decades", ok, "; ".join(details))
    assert ok


def test_10_pnt_surrogate(criterion, table):
    lo = mu_over_n_partial(table, 10**3)
    hi = mu_over_n_partial(table, 10**6)
    ok = abs(hi) < abs(lo) and abs(hi) < 0.05
    criterion(10, "|sum mu(n)/n| smaller at 1e6 than at 1e3 and < 0.05", ok, f"{abs(lo):.2e} -> {abs(hi):.2e}")
    assert ok


def test_11_muregular(criterion, small_table):
    rng = np.random.default_rng(42)
    worst = 0.0
    for mu in (0.25, 1.0, 2.0):
        for M in range(1, 7):
            c = [0j] + list((rng.normal(size=M) + 1j * rng.normal(size=M)) * 0.5)
            spec = MuRegularSpec(mu, tuple(c))
            res = muregular_coeffs_recursive(muregular_function(spec), mu, M, 40, small_table)
            worst = max(worst, max(abs(a - b) for a, b in zip(res.coeffs, spec.coeffs)))
    mu = 1e-6
    t = [0, 0.5, -0.25j, 0.125, 0.05 + 0.05j]
    spec = MuRegularSpec(mu, tuple(tn / iv(n, mu) if n else 0 for n, tn in enumerate(t)))
    f = muregular_function(spec)
    limit = analytic_limit_coeffs(muregular_coeffs_recursive(f, mu, 4, 40, small_table))
    boundary = BoundaryFunction.from_callable(f)
    degen = max(abs(limit[n] - taylor_coeff_unit(boundary, n, 40, small_table).value) for n in range(1, 5))
    ok = worst < 1e-6 and degen < 1e-4
    criterion(11, "mu-regular round trip < 1e-6; mu=1e-6 matches analytic extraction within 1e-4", ok,
              f"round trip max={worst:.2e}, degeneration={degen:.2e}")
    assert ok


def test_12_filter_bank(criterion, small_table):
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(100):
        F = HarmonicSignal.random(int(rng.integers(1, 33)), rng)
        got = aft_cos_sin(F, small_table)
        for n, (alpha, beta) in enumerate(got, start=1):
            a, b = F.cos_sin(n)
            worst = max(worst, abs(alpha - a), abs(beta - b))
    ledger_ok = True
    rows = []
    for N in (1, 2, 4, 8, 16, 32):
        rep = benchmark_vs_dft(HarmonicSignal.random(N, rng), small_table)
        harmonic = math.fsum(1.0 / k for k in range(1, N + 1))
        cap = N * harmonic + 2 * N
        ledger_ok &= rep.aft.multiplications <= divisor_pair_count(N) + 2 * N <= cap
        if N >= 8:
            ledger_ok &= rep.aft.multiplications < rep.dft.multiplications
        rows.append(f"N={N}: {rep.aft.multiplications} vs {rep.dft.multiplications}")
    ok = worst < 1e-9 and ledger_ok
    criterion(12, "filter bank exact within 1e-9; multiplications <= N H(N) + 2N and below naive DFT for N >= 8",
              ok, f"max error={worst:.2e}; " + ", ".join(rows))
    assert ok


def test_13_irrational_sampling(criterion, table):
    cos2 = PeriodicSignal.from_callable(lambda x: np.cos(2 * np.pi * np.asarray(x)) ** 2)
    geom = periodic_catalog("geom_disk", 0.5)
    cases = [
        ("int cos^2, sqrt2", lambda N: wintner_integral_irrational(cos2, "sqrt2", N, table).value, quadrature_mean(cos2)),
        ("int geom_disk, golden", lambda N: wintner_integral_irrational(geom, "golden", N, table).value, quadrature_mean(geom)),
        ("c_1 of cos, golden", lambda N: wintner_coeff_irrational(periodic_catalog("cos"), 1, "golden", N, table).value, 0.5),
        ("c_2 of geom_disk, ln2", lambda N: wintner_coeff_irrational(geom, 2, "ln2", N, table).value, 0.125),
    ]
    ok = True
    details = []
    for name, series, truth in cases:
        lo, hi = abs(series(100) - truth), abs(series(10**4) - truth)
        ok &= hi < lo
        details.append(f"{name}: {lo:.1e}->{hi:.1e}")
    criterion(13, "irrational-sampling deviation smaller at N=1e4 than at N=1e2", ok, "; ".join(details))
    assert ok
