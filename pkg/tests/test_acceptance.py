"""Acceptance battery: ten pinned statistical and analytic criteria.

Each test runs one criterion end to end at its shipped configuration
and default seed, prints its one-line verdict, and fails with the
offending check spelled out.  Tolerances are fixed inside the
``experiments`` module: statistical comparisons use max(k SE, floor)
bands, deterministic identities use absolute windows.
"""

import pytest

from gue_logdet import experiments


def _assert_criterion(result: experiments.CriterionResult) -> None:
    print(result.summary_line())
    failed = [r for r in result.reports if not r.passed]
    detail = "; ".join(
        f"{r.name}: predicted={r.predicted:.6g} estimated={r.estimated:.6g} "
        f"se={r.se:.3g} tol={r.tolerance:.3g} {r.detail}"
        for r in failed
    )
    assert not failed, f"{result.name} failed {len(failed)} checks: {detail}"


def test_criterion_01_variance_growth():
    # Var D_N(0) gains (1/2) log 2 per doubling, N in {64, 128, 256},
    # 2000 replicates, tolerance max(3 SE, 0.05) on each difference
    _assert_criterion(experiments.criterion_01())


def test_criterion_02_coefficient_gaussianity():
    # a_n = (2/sqrt(n)) tr T_n at N = 256, 4000 replicates, n = 1..8:
    # KS normality at Bonferroni level 0.01/8, unit variance within
    # 3 SE, pairwise correlations within 3 SE of zero
    _assert_criterion(experiments.criterion_02())


def test_criterion_03_mesoscopic_covariance():
    # N = 1024, d = sqrt(N), eta = 1, x0 = 0, tau in {0, 0.5, 1, 2},
    # 10000 replicates: Cov(W(tau), W(ups)) within max(3 SE, 0.05)
    _assert_criterion(experiments.criterion_03())


def test_criterion_04_whitenoise_functionals():
    # two disjoint bumps at d = N^0.6: hermitian covariance matches the
    # overlap integral within max(3 SE, 0.05), relation and mean
    # within 3 SE of zero
    _assert_criterion(experiments.criterion_04())


def test_criterion_05_finite_n_oracle():
    # N = 50 Chebyshev traces: Monte Carlo within 3 SE of the exact
    # kernel values, exact variances within 0.1 of the n/4 limit
    _assert_criterion(experiments.criterion_05())


def test_criterion_06_identity_battery():
    # exponential-integral identity < 1e-8, Cesaro log series < 1e-3,
    # Szego decay slope in [-1.2, -0.8], boundary product vs weight
    # < 1e-8, conformal identity < 1e-12
    _assert_criterion(experiments.criterion_06())


def test_criterion_07_limit_process_samplers():
    # Cholesky vs spectral synthesis on a 9-point grid, 100000 draws:
    # covariance entries within max(0.02, 4 SE); Var B(2 eta) within
    # 3 SE of (1/2) log 2
    _assert_criterion(experiments.criterion_07())


def test_criterion_08_barnes_special_values():
    # log G at 1..4 within 1e-10 of {0, 0, 0, log 2}; G(1/2) matches
    # the Glaisher closed form within 1e-8; C(0) = 1 exactly
    _assert_criterion(experiments.criterion_08())


def test_criterion_09_sampler_agreement():
    # dense vs tridiagonal at N = 8, 5000 draws each: two-sample KS
    # p > 0.01 on the largest eigenvalue and on tr T_2
    _assert_criterion(experiments.criterion_09())


def test_criterion_10_series_reconstruction():
    # 20 spectra at N = 32: N log 2 + sum_{k<=4096} c_k T_k(x) matches
    # D_N(x) within 1e-2 at 5 interior points >= 0.05 from the spectrum
    _assert_criterion(experiments.criterion_10())
