import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gue_logdet import kernel
from gue_logdet.spectra import _panel_nodes


def _id(x):
    return x


def _t2(x):
    return 2.0 * x * x - 1.0


def _t3(x):
    return 4.0 * x**3 - 3.0 * x


def test_wavefunctions_orthonormal():
    n_matrix = 10
    nodes, weights = _panel_nodes(-2.0, 2.0, 12)
    for l, m in ((0, 0), (3, 3), (9, 9), (2, 5), (0, 9)):
        pl = kernel.hermite_psi(n_matrix, l, nodes)
        pm = kernel.hermite_psi(n_matrix, m, nodes)
        val = float(np.sum(weights * pl * pm))
        assert val == pytest.approx(1.0 if l == m else 0.0, abs=1e-8)


def test_density_integrates_to_matrix_size():
    ev = kernel.KernelEvaluator(20)
    nodes, weights = _panel_nodes(-1.6, 1.6, 16)
    total = float(np.sum(weights * ev.diagonal(nodes)))
    assert total == pytest.approx(20.0, abs=1e-7)


@given(
    x=st.floats(-1.2, 1.2),
    y=st.floats(-1.2, 1.2),
)
def test_kernel_matches_wavefunction_sum(x, y):
    ev = kernel.KernelEvaluator(12)
    direct = sum(
        float(kernel.hermite_psi(12, l, np.array([x]))[0] * kernel.hermite_psi(12, l, np.array([y]))[0])
        for l in range(12)
    )
    assert kernel.kernel_K(ev, x, y) == pytest.approx(direct, abs=1e-9)


def test_confluent_diagonal_matches_sum():
    ev = kernel.KernelEvaluator(15)
    xs = np.array([-0.9, -0.2, 0.0, 0.4, 1.01])
    direct = np.zeros_like(xs)
    for l in range(15):
        direct += kernel.hermite_psi(15, l, xs) ** 2
    assert np.allclose(ev.diagonal(xs), direct, atol=1e-9)


def test_exact_trace_moments():
    # Wick pairings with E H_ab H_cd = delta_ad delta_bc / (4N) give
    # E tr T2 = -N/2, Var tr T2 = 1/2 (every N), Var tr H = 1/4,
    # Var tr T3 = 3/4 + 3/(4 N^2)
    ev50 = kernel.KernelEvaluator(50)
    assert kernel.exact_linear_stat_mean(ev50, _t2) == pytest.approx(-25.0, abs=1e-7)
    assert kernel.exact_linear_stat_cov(ev50, _t2, _t2) == pytest.approx(0.5, abs=1e-7)
    assert kernel.exact_linear_stat_cov(ev50, _t3, _t3) == pytest.approx(0.7503, abs=1e-6)
    ev12 = kernel.KernelEvaluator(12)
    assert kernel.exact_linear_stat_cov(ev12, _t2, _t2) == pytest.approx(0.5, abs=1e-7)
    ev30 = kernel.KernelEvaluator(30)
    assert kernel.exact_linear_stat_cov(ev30, _id, _id) == pytest.approx(0.25, abs=1e-7)
    assert kernel.exact_linear_stat_mean(ev30, _id) == pytest.approx(0.0, abs=1e-9)


def test_odd_even_cross_covariance_vanishes():
    # T2 is even, x is odd; the symmetric kernel kills the cross term
    ev = kernel.KernelEvaluator(14)
    assert kernel.exact_linear_stat_cov(ev, _id, _t2) == pytest.approx(0.0, abs=1e-9)


def test_hermite_psi_guards():
    with pytest.raises(ValueError):
        kernel.hermite_psi(10, 13, np.array([0.0]))
    with pytest.raises(ValueError):
        kernel.hermite_psi(0, 0, np.array([0.0]))
    with pytest.raises(ValueError):
        kernel.KernelEvaluator(1)
