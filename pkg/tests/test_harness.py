import math

import numpy as np
import pytest

from gue_logdet import harness
from gue_logdet.sampling import rng_for


def _pair_rep(tag):
    rng = rng_for(tag)
    return rng.standard_normal(2)


def test_run_replicated_deterministic():
    a = harness.run_replicated(_pair_rep, 20, seed=5)
    b = harness.run_replicated(_pair_rep, 20, seed=5)
    c = harness.run_replicated(_pair_rep, 20, seed=6)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.shape == (20, 2)


def test_run_replicated_worker_count_invariant():
    serial = harness.run_replicated(_pair_rep, 50, seed=7, workers=1)
    parallel = harness.run_replicated(_pair_rep, 50, seed=7, workers=2)
    assert np.array_equal(serial, parallel)


def test_run_replicated_validation():
    with pytest.raises(ValueError):
        harness.run_replicated(_pair_rep, 0, seed=1)
    with pytest.raises(ValueError):
        harness.run_replicated(_pair_rep, 4, seed=1, workers=0)


def test_sample_stats_against_numpy():
    rows = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 12.0]])
    stats = harness.SampleStats.from_rows(rows)
    assert np.allclose(stats.mean, rows.mean(axis=0))
    assert np.allclose(stats.cov, np.cov(rows.T))
    assert np.allclose(stats.var, np.var(rows, axis=0, ddof=1))
    assert np.allclose(stats.se_mean, np.sqrt(stats.var / 3.0))
    with pytest.raises(ValueError):
        harness.SampleStats.from_rows(rows[:1])


def test_se_var_matches_gaussian_theory():
    # for N(0,1): Var of the sample variance is ~ 2/R
    rng = rng_for((31, 0))
    rows = rng.standard_normal((100000, 1))
    stats = harness.SampleStats.from_rows(rows)
    theory = math.sqrt(2.0 / 100000)
    assert 0.85 * theory < float(stats.se_var[0]) < 1.15 * theory


def test_compare_tolerance_rule():
    r = harness.compare("x", 1.0, 1.05, se=0.01, k=3.0, floor=0.1)
    assert r.tolerance == 0.1 and r.passed
    r = harness.compare("x", 1.0, 1.05, se=0.02, k=3.0)
    assert r.tolerance == pytest.approx(0.06) and r.passed
    r = harness.compare("x", 1.0, 1.2, se=0.02, k=3.0)
    assert not r.passed
    with pytest.raises(ValueError):
        harness.compare("x", 0.0, 0.0, se=-1.0)


def test_compare_calibration():
    # a 3 SE band on a gaussian mean should pass ~99.7% of the time
    passes = 0
    trials = 200
    for t in range(trials):
        draws = rng_for((32, t)).standard_normal(400)
        rep = harness.compare("m", 0.0, float(draws.mean()), float(draws.std(ddof=1) / 20.0))
        passes += int(rep.passed)
    assert passes >= 190


def test_ks_normality_detects_uniform():
    rng = rng_for((33, 0))
    assert harness.ks_normality_pvalue(rng.uniform(size=2000)) < 1e-6


def test_ks_normality_accepts_gaussian():
    rng = rng_for((34, 0))
    assert harness.ks_normality_pvalue(rng.standard_normal(2000)) > 1e-3


def test_ks_normality_guards():
    rng = rng_for((35, 0))
    with pytest.raises(ValueError):
        harness.ks_normality_pvalue(rng.standard_normal(50))
    with pytest.raises(ValueError):
        harness.ks_normality_pvalue(np.ones(200))


def test_report_serialization():
    rep = harness.compare("stat", 1.0, 1.01, se=0.02, seed=9)
    timed = harness.with_wall_time(rep, 1.25)
    full = timed.to_dict()
    assert full["wall_time_s"] == 1.25
    stripped = timed.to_dict(include_wall_time=False)
    assert "wall_time_s" not in stripped
    assert stripped["name"] == "stat" and stripped["passed"] is True
