import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gue_logdet import sampling


def test_dense_matrix_is_hermitian():
    m = sampling.sample_gue_dense(40, (0, 0))
    assert m.n == 40
    assert np.allclose(m.entries, m.entries.conj().T, atol=0.0)
    assert np.all(np.isreal(np.diag(m.entries)))


def test_dense_entry_variances():
    # density exp(-2 N tr H^2): Var H_ii = 1/(4N), Var Re H_ij = 1/(8N)
    n = 400
    m = sampling.sample_gue_dense(n, (1, 0))
    diag = np.real(np.diag(m.entries))
    var_diag = float(np.var(diag))
    se = (1.0 / (4 * n)) * math.sqrt(2.0 / n)
    assert abs(var_diag - 1.0 / (4 * n)) < 5.0 * se
    iu = np.triu_indices(n, 1)
    off = m.entries[iu]
    count = len(off)
    se_off = (1.0 / (8 * n)) * math.sqrt(2.0 / count)
    assert abs(float(np.var(off.real)) - 1.0 / (8 * n)) < 5.0 * se_off
    assert abs(float(np.var(off.imag)) - 1.0 / (8 * n)) < 5.0 * se_off


def test_eigenvalues_sorted_and_bounded():
    s = sampling.eigenvalues(sampling.sample_gue_dense(128, (2, 0)))
    assert np.all(np.diff(s.values) >= 0.0)
    # support is [-1, 1]; edge fluctuations are O(N^(-2/3))
    assert float(np.max(np.abs(s.values))) < 1.1


def test_fast_sampler_scalar_case():
    # n = 1: the matrix is a single real gaussian with variance 1/4
    draws = np.array([sampling.sample_spectrum_fast(1, (3, r)).values[0] for r in range(4000)])
    var = float(np.var(draws))
    se = 0.25 * math.sqrt(2.0 / 4000)
    assert abs(var - 0.25) < 4.0 * se
    assert abs(float(np.mean(draws))) < 4.0 * 0.5 / math.sqrt(4000)


def test_fast_sampler_support():
    s = sampling.sample_spectrum_fast(512, (4, 0))
    assert s.n == 512
    assert np.all(np.diff(s.values) >= 0.0)
    assert float(np.max(np.abs(s.values))) < 1.05


@given(seed=st.integers(0, 2**31), rep=st.integers(0, 10_000))
def test_rng_streams_reproduce(seed, rep):
    a = sampling.rng_for((seed, rep)).standard_normal(4)
    b = sampling.rng_for((seed, rep)).standard_normal(4)
    assert np.array_equal(a, b)


def test_samplers_deterministic_per_tag():
    a = sampling.sample_spectrum_fast(32, (7, 3)).values
    b = sampling.sample_spectrum_fast(32, (7, 3)).values
    c = sampling.sample_spectrum_fast(32, (7, 4)).values
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    d1 = sampling.sample_gue_dense(16, (9, 0)).entries
    d2 = sampling.sample_gue_dense(16, (9, 0)).entries
    assert np.array_equal(d1, d2)


def test_sample_validation():
    with pytest.raises(ValueError):
        sampling.EigenvalueSample(n=3, values=np.array([0.2, -0.1, 0.5]), seed_tag=(0, 0))
    bad = np.array([[0.0, 1.0], [0.5, 0.0]], dtype=complex)
    with pytest.raises(ValueError):
        sampling.HermitianMatrix(n=2, entries=bad, seed_tag=(0, 0))
