"""Exact finite-N determinantal computations (Monte-Carlo-free oracle).

The N-point correlation structure of the exp(-2N Tr H^2) ensemble is
determinantal with projection kernel

    K_N(x, y) = sum_{l < N} psi_l(x) psi_l(y),
    psi_l(x) = (2N)^(1/4) h_l(sqrt(2N) x),

where h_l are the orthonormal Hermite functions on the real line.  The
Christoffel-Darboux identity collapses the sum to the top two levels:

    K_N(x, y) = [psi_N(x) psi_(N-1)(y) - psi_N(y) psi_(N-1)(x)]
                / (2 (x - y)),

with a confluent derivative form on the diagonal.  Exact means and
covariances of linear eigenvalue statistics follow by quadrature:

    E sum f(x_j)        = int f(x) K_N(x, x) dx
    Cov(sum f1, sum f2) = 1/2 int int (f1(x)-f1(y)) (f2(x)-f2(y))
                                      K_N(x, y)^2 dx dy.

These serve as ground truth for the Monte Carlo experiments.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .spectra import QuadratureError, _panel_nodes

_CONFLUENT_EPS = 1e-7


def hermite_psi(N: int, l: int, x) -> np.ndarray:
    """Rescaled Hermite wavefunction psi_l(x) = (2N)^(1/4) h_l(sqrt(2N) x).

    Evaluated by the stable function-form recurrence
    h_(l+1)(u) = u sqrt(2/(l+1)) h_l(u) - sqrt(l/(l+1)) h_(l-1)(u);
    the Gaussian ground state underflows once N u^2/2 exceeds ~700, so
    the intended range is N up to a few hundred with |x| <= 1.5.
    """
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    if l > 100_000:
        raise ValueError(f"level {l} out of intended range")
    if not 0 <= l <= N + 2:
        raise ValueError(f"level must satisfy 0 <= l <= N + 2, got {l}")
    scale = math.sqrt(2.0 * N)
    u = np.asarray(x, dtype=float) * scale
    h_prev = np.pi**-0.25 * np.exp(-0.5 * u * u)
    if l == 0:
        return math.sqrt(scale) * h_prev
    h_cur = u * math.sqrt(2.0) * h_prev
    for level in range(1, l):
        h_prev, h_cur = h_cur, u * math.sqrt(2.0 / (level + 1)) * h_cur - math.sqrt(level / (level + 1)) * h_prev
    return math.sqrt(scale) * h_cur


class KernelEvaluator:
    """Workspace for K_N: the top three wavefunction levels at given points."""

    def __init__(self, n_matrix: int):
        if n_matrix < 2:
            raise ValueError(f"kernel oracle needs N >= 2, got {n_matrix}")
        self.n_matrix = n_matrix
        self.scale = math.sqrt(2.0 * n_matrix)

    def psi_top(self, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(psi_(N-2), psi_(N-1), psi_N) evaluated at x, one recurrence pass."""
        u = np.asarray(x, dtype=float) * self.scale
        h_prev = np.pi**-0.25 * np.exp(-0.5 * u * u)
        h_cur = u * math.sqrt(2.0) * h_prev
        h_m2 = h_prev
        for level in range(1, self.n_matrix):
            h_m2 = h_prev
            h_prev, h_cur = h_cur, u * math.sqrt(2.0 / (level + 1)) * h_cur - math.sqrt(level / (level + 1)) * h_prev
        root = math.sqrt(self.scale)
        return root * h_m2, root * h_prev, root * h_cur

    def diagonal(self, x) -> np.ndarray:
        """K_N(x, x) by the confluent Christoffel-Darboux formula.

        The derivative identity psi_l' = B sqrt(2l) psi_(l-1) - B^2 x psi_l
        (B = sqrt(2N)) collapses the x-terms, leaving
        K(x,x) = B/2 [ sqrt(2N) psi_(N-1)^2 - sqrt(2N-2) psi_N psi_(N-2) ].
        """
        n = self.n_matrix
        p_m2, p_m1, p_n = self.psi_top(x)
        return 0.5 * self.scale * (
            math.sqrt(2.0 * n) * p_m1**2 - math.sqrt(2.0 * n - 2.0) * p_n * p_m2
        )


def kernel_K(evaluator: KernelEvaluator, x1: float, x2: float) -> float:
    """Projection kernel K_N(x1, x2); confluent form within 1e-7 of the diagonal."""
    if abs(x1 - x2) < _CONFLUENT_EPS:
        return float(evaluator.diagonal(0.5 * (x1 + x2)))
    _, p1_m1, p1_n = evaluator.psi_top(x1)
    _, p2_m1, p2_n = evaluator.psi_top(x2)
    return float((p1_n * p2_m1 - p2_n * p1_m1) / (2.0 * (x1 - x2)))


def density_rho(evaluator: KernelEvaluator, x) -> np.ndarray:
    """Normalized density of states K_N(x, x)/N; integrates to 1."""
    return evaluator.diagonal(x) / evaluator.n_matrix


def _kernel_matrix(evaluator: KernelEvaluator, nodes: np.ndarray) -> np.ndarray:
    """K_N on a tensor grid, confluent values on the exact diagonal."""
    p_m2, p_m1, p_n = evaluator.psi_top(nodes)
    num = np.outer(p_n, p_m1) - np.outer(p_m1, p_n)
    den = 2.0 * (nodes[:, None] - nodes[None, :])
    near = np.abs(den) < 2.0 * _CONFLUENT_EPS
    np.fill_diagonal(den, 1.0)
    den[near] = 1.0
    k = num / den
    diag = evaluator.diagonal(nodes)
    k[near] = np.broadcast_to(diag[:, None], k.shape)[near]
    np.fill_diagonal(k, diag)
    return k

_PANEL_LADDER = (8, 12, 18, 27, 41)


def exact_linear_stat_mean(
    evaluator: KernelEvaluator,
    f: Callable[[np.ndarray], np.ndarray],
    box_pad: float = 0.5,
    rtol: float = 1e-7,
) -> float:
    """E sum_j f(x_j) = int f(x) K_N(x, x) dx, panel-refined to rtol."""
    prev = None
    for panels in _PANEL_LADDER:
        nodes, weights = _panel_nodes(-1.0 - box_pad, 1.0 + box_pad, panels)
        val = float(np.sum(weights * np.asarray(f(nodes), dtype=float) * evaluator.diagonal(nodes)))
        if prev is not None and abs(val - prev) <= rtol * max(1.0, abs(val)):
            return val
        prev = val
    raise QuadratureError("mean quadrature did not settle", abs(val - prev))


def exact_linear_stat_cov(
    evaluator: KernelEvaluator,
    f1: Callable[[np.ndarray], np.ndarray],
    f2: Callable[[np.ndarray], np.ndarray],
    box_pad: float = 0.5,
    rtol: float = 1e-7,
) -> float:
    """Cov(sum f1(x_j), sum f2(x_j)) = 1/2 iint Df1 Df2 K_N^2, refined to rtol.

    Df is the difference f(x) - f(y); the integral runs over the box
    [-1-pad, 1+pad]^2 (wavefunction decay certifies the tail).
    """
    prev = None
    for panels in _PANEL_LADDER:
        nodes, weights = _panel_nodes(-1.0 - box_pad, 1.0 + box_pad, panels)
        g1 = np.asarray(f1(nodes), dtype=float)
        g2 = np.asarray(f2(nodes), dtype=float)
        ksq = _kernel_matrix(evaluator, nodes) ** 2
        # expand (g1_i - g1_j)(g2_i - g2_j) into four rank-one sums
        row = ksq @ weights
        wf12 = weights * g1 * g2
        cross = (weights * g1) @ ksq @ (weights * g2)
        val = float(np.dot(wf12, row) - cross)
        if prev is not None and abs(val - prev) <= rtol * max(1.0, abs(val)):
            return val
        prev = val
    raise QuadratureError("covariance quadrature did not settle", abs(val - prev))
