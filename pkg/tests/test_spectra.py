import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from gue_logdet import sampling, spectra


def _sample_of(values) -> sampling.EigenvalueSample:
    arr = np.sort(np.asarray(values, dtype=float))
    return sampling.EigenvalueSample(n=len(arr), values=arr, seed_tag=(0, 0))


def test_log_abs_charpoly_hand_value():
    s = _sample_of([-0.5, 0.5])
    assert spectra.log_abs_charpoly(s, 0.0) == pytest.approx(2.0 * math.log(2.0), abs=1e-14)


def test_log_abs_charpoly_rejects_spectrum_point():
    s = _sample_of([-0.5, 0.5])
    with pytest.raises(spectra.SingularInputError):
        spectra.log_abs_charpoly(s, 0.5)


def test_meso_increment_zero_tau_is_exact_zero():
    s = sampling.sample_spectrum_fast(64, (11, 0))
    cfg = spectra.MesoscopicConfig(x0=0.0, eta=1.0, alpha=0.5)
    assert spectra.meso_increment(s, cfg, 0.0) == 0.0


@given(
    tau=st.floats(-1.0, 1.0).filter(lambda t: abs(t) > 1e-3),
    ups=st.floats(-1.0, 1.0).filter(lambda t: abs(t) > 1e-3),
)
def test_meso_increment_cocycle(tau, ups):
    # W(tau; x0) + W(ups; x0 - tau/d) telescopes to W(tau + ups; x0)
    s = sampling.sample_spectrum_fast(64, (12, 0))
    cfg = spectra.MesoscopicConfig(x0=0.0, eta=1.0, alpha=0.5)
    d = cfg.scale(s.n)
    shifted = spectra.MesoscopicConfig(x0=-tau / d, eta=1.0, alpha=0.5)
    lhs = spectra.meso_increment(s, cfg, tau) + spectra.meso_increment(s, shifted, ups)
    rhs = spectra.meso_increment(s, cfg, tau + ups)
    assert lhs == pytest.approx(rhs, abs=1e-9)


@given(k=st.integers(0, 12))
def test_chebyshev_trace_matches_angle_form(k):
    s = sampling.sample_spectrum_fast(32, (13, 0))
    inside = np.clip(s.values, -1.0, 1.0)
    expected = float(np.sum(np.cos(k * np.arccos(inside))))
    assert spectra.chebyshev_trace(s, k) == pytest.approx(expected, abs=1e-10)


def test_coeff_a_normalization():
    s = sampling.sample_spectrum_fast(32, (14, 0))
    for k in (1, 2, 5):
        expected = 2.0 / math.sqrt(k) * spectra.chebyshev_trace(s, k)
        assert spectra.coeff_a(s, k) == expected


def test_edge_r_zero_order():
    plus = spectra.edge_r(0, 1.25)
    assert plus == pytest.approx((math.log(0.5), 0.0), abs=1e-14)
    minus = spectra.edge_r(0, -1.25)
    assert minus == pytest.approx((0.0, math.log(0.5)), abs=1e-14)
    assert spectra.edge_r(3, 0.7) == (0.0, 0.0)


def test_cheb_coeffs_with_outlier_match_hand_assembly():
    s = _sample_of([-0.3, 0.4, 1.25])
    series = spectra.cheb_fourier_coeffs(s, 6)
    v = 1.25 - math.sqrt(1.25**2 - 1.0)  # = 0.5
    assert series.c[0] == pytest.approx(math.log(0.5), abs=1e-14)
    for k in range(1, 7):
        inside = sum(math.cos(k * math.acos(x)) for x in (-0.3, 0.4))
        assert series.c[k] == pytest.approx(2.0 / k * (inside + v**k), abs=1e-12)
    assert series.n_log2_term == pytest.approx(3.0 * math.log(2.0))


def test_reconstruction_error_shrinks_with_truncation():
    s = sampling.sample_spectrum_fast(32, (15, 0))
    points = spectra.pick_far_points(s)
    assert points is not None
    exact = np.array([spectra.log_abs_charpoly(s, float(p)) for p in points])
    errs = []
    for k_max in (64, 512, 4096):
        series = spectra.cheb_fourier_coeffs(s, k_max)
        errs.append(float(np.max(np.abs(series.reconstruct(points) - exact))))
    assert errs[2] < 1e-2
    assert errs[2] < errs[0] / 10.0


@given(rep=st.integers(0, 30))
def test_pick_far_points_contract(rep):
    s = sampling.sample_spectrum_fast(32, (16, rep))
    points = spectra.pick_far_points(s)
    if points is None:
        return
    assert len(points) == 5
    assert np.all(np.abs(points) <= 0.99)
    dist = np.min(np.abs(points[:, None] - s.values[None, :]), axis=1)
    assert np.all(dist >= 0.05)
    gaps = np.abs(points[:, None] - points[None, :])[np.triu_indices(5, 1)]
    assert np.all(gaps >= 0.01)


@given(s_val=st.floats(0.1, 20.0))
def test_fourier_coeff_b_bound(s_val):
    sample = sampling.sample_spectrum_fast(16, (17, 0))
    cfg = spectra.MesoscopicConfig(x0=0.0, eta=1.0, alpha=0.5)
    b = spectra.fourier_coeff_b(sample, cfg, s_val)
    assert abs(b) <= sample.n / math.sqrt(s_val) + 1e-12


def test_fourier_coeff_b_rejects_nonpositive_s():
    sample = sampling.sample_spectrum_fast(8, (17, 1))
    cfg = spectra.MesoscopicConfig(x0=0.0, eta=1.0, alpha=0.5)
    with pytest.raises(ValueError):
        spectra.fourier_coeff_b(sample, cfg, 0.0)


def test_bump_shape():
    xi = spectra.TestFunction(center=2.0, half_width=0.5)
    assert xi.support == (1.5, 2.5)
    assert float(xi(2.0)) == pytest.approx(1.0)
    assert float(xi(1.5)) == 0.0
    assert float(xi(3.0)) == 0.0
    with pytest.raises(ValueError):
        spectra.TestFunction(center=0.3, half_width=0.5)


def test_smeared_coeff_matches_direct_quadrature():
    sample = sampling.sample_spectrum_fast(8, (18, 0))
    cfg = spectra.MesoscopicConfig(x0=0.0, eta=1.0, alpha=0.6)
    xi = spectra.TestFunction(center=2.0, half_width=0.5)
    c = spectra.smeared_coeff_c(sample, cfg, xi)
    d = cfg.scale(sample.n)
    lo, hi = xi.support
    expected = 0.0 + 0.0j
    for x in sample.values:
        y = d * (x - cfg.x0)
        re, _ = quad(lambda s: xi(s) / math.sqrt(s) * math.cos(s * y), lo, hi, limit=400)
        im, _ = quad(lambda s: xi(s) / math.sqrt(s) * math.sin(s * y), lo, hi, limit=400)
        expected += complex(re, -im)
    assert abs(c - expected) < 1e-6


def test_xi_hat_decay_and_quadrature_stability():
    # this bump's transform decays like exp(-c sqrt(y)), not faster
    xi = spectra.TestFunction(center=2.0, half_width=0.5)
    y = np.array([0.0, 40.0, 200.0])
    mags = np.abs(spectra.xi_hat(xi, y))
    assert mags[1] < 1e-2 * mags[0]
    assert mags[2] < mags[1]
    refined = np.abs(spectra.xi_hat(xi, y, panels=64))
    assert np.allclose(mags, refined, atol=1e-10)
