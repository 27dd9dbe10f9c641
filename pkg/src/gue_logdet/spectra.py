"""Empirical statistics built from one GUE eigenvalue sample.

Everything here is a deterministic functional of a spectrum
``x_1 <= ... <= x_N``:

* ``log_abs_charpoly``: D_N(x) = -sum_j log|x_j - x|, the negative
  log-modulus of the characteristic polynomial.
* ``meso_increment``: the mesoscopic increment process W_N^(eta)(tau),
  a difference of two regularized log-moduli at scale d_N = N^alpha.
* ``chebyshev_trace`` / ``coeff_a``: linear statistics sum T_n(x_j) and
  their CLT normalization a_n = (2/sqrt(n)) sum T_n(x_j).
* ``cheb_fourier_coeffs``: the Chebyshev-Fourier coefficients c_k of
  D_N with edge corrections for eigenvalues outside [-1, 1], satisfying
  D_N(x) = N log 2 + sum_k c_k T_k(x) pointwise away from the spectrum.
* ``fourier_coeff_b`` / ``smeared_coeff_c``: spectral Fourier
  coefficients b_N(s) and their smearing c_N(xi) against a smooth bump,
  computed by two independent routes that must agree.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .sampling import EigenvalueSample

_GL32_X, _GL32_W = np.polynomial.legendre.leggauss(32)


class SingularInputError(ValueError):
    """Evaluation point collides with an eigenvalue."""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"evaluation point within 1e-13 of eigenvalue {index} ({value!r})")


class QuadratureError(RuntimeError):
    """Quadrature failed to converge; carries the achieved error estimate."""

    def __init__(self, message: str, achieved: float):
        self.achieved = achieved
        super().__init__(f"{message} (achieved error estimate {achieved:.3e})")


@dataclasses.dataclass(frozen=True)
class MesoscopicConfig:
    """Reference point, regularizer and scale exponent: d_N = N^alpha."""

    x0: float
    eta: float
    alpha: float

    def __post_init__(self) -> None:
        if not -1.0 < self.x0 < 1.0:
            raise ValueError(f"x0 must lie strictly inside (-1, 1), got {self.x0}")
        if self.eta <= 0.0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")

    def scale(self, n: int) -> float:
        """d_N = N^alpha."""
        return float(n) ** self.alpha


@dataclasses.dataclass(frozen=True)
class ChebCoeffSeries:
    """Chebyshev-Fourier coefficients of D_N plus the additive N log 2."""

    k_max: int
    c: np.ndarray
    n_log2_term: float

    def __post_init__(self) -> None:
        if self.k_max < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")
        if self.c.shape != (self.k_max + 1,):
            raise ValueError(f"coefficient array must have length k_max + 1")
        if not np.all(np.isfinite(self.c)):
            raise ValueError("coefficients must be finite")

    def reconstruct(self, x) -> np.ndarray:
        """N log 2 + sum_{k <= k_max} c_k T_k(x)."""
        return self.n_log2_term + np.polynomial.chebyshev.chebval(x, self.c)


@dataclasses.dataclass(frozen=True)
class TestFunction:
    """Smooth bump xi(s) = amp * exp(1 - 1/(1-u^2)), u = (s-center)/half_width.

    Infinitely smooth, compactly supported in (0, infinity); the domain
    constraint center - half_width > 0 keeps the support off the origin.
    """

    center: float
    half_width: float
    amplitude: float = 1.0

    def __post_init__(self) -> None:
        if self.center <= 0.0:
            raise ValueError(f"center must be positive, got {self.center}")
        if self.half_width <= 0.0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        if self.center - self.half_width <= 0.0:
            raise ValueError("support must stay inside (0, inf): center - half_width <= 0")

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.half_width, self.center + self.half_width)

    def __call__(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        u = (s - self.center) / self.half_width
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        out[inside] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - u[inside] ** 2))
        return out


def log_abs_charpoly(sample: EigenvalueSample, x: float) -> float:
    """D_N(x) = -sum_j log|x_j - x|; rejects x on the spectrum."""
    diff = sample.values - x
    nearest = int(np.argmin(np.abs(diff)))
    if abs(diff[nearest]) <= 1e-13:
        raise SingularInputError(nearest, float(sample.values[nearest]))
    return float(-np.sum(np.log(np.abs(diff))))


def meso_increment(sample: EigenvalueSample, cfg: MesoscopicConfig, tau: float) -> float:
    """W_N^(eta)(tau), the regularized log-modulus increment at scale d_N.

    W(tau) = (1/2) sum_j [ log((x_j - x0)^2 + eps^2)
                           - log((x_j - x0 + tau/d_N)^2 + eps^2) ]
    with eps = eta/d_N; the second singularity sits at x0 - tau/d_N.
    """
    if tau == 0.0:
        return 0.0
    d = cfg.scale(sample.n)
    eps2 = (cfg.eta / d) ** 2
    u = sample.values - cfg.x0
    return float(0.5 * np.sum(np.log(u * u + eps2) - np.log((u + tau / d) ** 2 + eps2)))


def chebyshev_trace(sample: EigenvalueSample, n: int) -> float:
    """sum_j T_n(x_j) by the three-term recurrence (valid for all real x)."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    x = sample.values
    if n == 0:
        return float(sample.n)
    t_prev = np.ones_like(x)
    t_cur = x.copy()
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
    return float(np.sum(t_cur))


def coeff_a(sample: EigenvalueSample, n: int) -> float:
    """CLT-normalized coefficient a_n = (2/sqrt(n)) sum_j T_n(x_j)."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    return 2.0 / math.sqrt(n) * chebyshev_trace(sample, n)


def edge_r(k: int, x: float) -> tuple[float, float]:
    """Closed-form edge corrections (r_k^+, r_k^-) for one eigenvalue.

    For k >= 1: r_k^+-(x) = (2/k)(-T_k(x) + (x -+ sqrt(x^2-1))^k) when
    +-x > 1, else 0.  For k = 0: log|x -+ sqrt(x^2-1)| when +-x > 1.
    Only for small k: T_k grows like e^(k arccosh|x|) outside [-1, 1],
    so this form overflows for k of a few hundred; the series assembly
    in ``cheb_fourier_coeffs`` uses the cancellation-free equivalent.
    """
    if abs(x) <= 1.0:
        return (0.0, 0.0)
    root = math.sqrt(x * x - 1.0)
    if k == 0:
        return (math.log(abs(x - root)), 0.0) if x > 1.0 else (0.0, math.log(abs(x + root)))
    t_k = math.cosh(k * math.acosh(abs(x))) * (1.0 if x > 0 else (-1.0) ** k)
    if x > 1.0:
        return ((2.0 / k) * (-t_k + (x - root) ** k), 0.0)
    return (0.0, (2.0 / k) * (-t_k + (x + root) ** k))


def cheb_fourier_coeffs(sample: EigenvalueSample, k_max: int) -> ChebCoeffSeries:
    """Chebyshev-Fourier coefficients c_0..c_k_max of D_N.

    Inside eigenvalues contribute (2/k) T_k(x_j); eigenvalues outside
    [-1, 1] contribute (2/k) v^k with v = x - sign(x) sqrt(x^2 - 1)
    (so |v| < 1), plus c_0 = sum log|v|.  Algebraically identical to the
    indicator-corrected textbook form, but free of the T_k(x) - v^(-k)
    cancellation that overflows for large k.
    """
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")
    x = sample.values
    inside = np.abs(x) <= 1.0
    xi = x[inside]
    v_plus = x[x > 1.0]
    v_plus = v_plus - np.sqrt(v_plus**2 - 1.0)
    v_minus = x[x < -1.0]
    v_minus = v_minus + np.sqrt(v_minus**2 - 1.0)

    c = np.empty(k_max + 1)
    c[0] = math.fsum(np.log(np.abs(v_plus))) + math.fsum(np.log(np.abs(v_minus)))
    t_prev = np.ones_like(xi)
    t_cur = xi.copy()
    pow_p = v_plus.copy()
    pow_m = v_minus.copy()
    for k in range(1, k_max + 1):
        c[k] = (2.0 / k) * (t_cur.sum() + pow_p.sum() + pow_m.sum())
        t_prev, t_cur = t_cur, 2.0 * xi * t_cur - t_prev
        pow_p *= v_plus
        pow_m *= v_minus
    return ChebCoeffSeries(k_max=k_max, c=c, n_log2_term=sample.n * math.log(2.0))


def pick_far_points(
    sample: EigenvalueSample,
    n_points: int = 5,
    min_dist: float = 0.05,
    separation: float = 0.01,
    bound: float = 0.99,
    grid_step: float = 5e-4,
) -> np.ndarray | None:
    """Interior points farthest from the spectrum, for reconstruction checks.

    Scans a grid on [-bound, bound], sorts by distance to the nearest
    eigenvalue, and greedily keeps points with pairwise separation.
    Returns None when fewer than ``n_points`` grid points clear
    ``min_dist`` (possible at small N where mean spacing ~ min_dist).
    """
    cand = np.arange(-bound, bound + grid_step / 2, grid_step)
    dist = np.min(np.abs(cand[:, None] - sample.values[None, :]), axis=1)
    picked: list[float] = []
    for idx in np.argsort(-dist):
        if len(picked) == n_points or dist[idx] < min_dist:
            break
        if all(abs(cand[idx] - p) >= separation for p in picked):
            picked.append(float(cand[idx]))
    if len(picked) < n_points:
        return None
    return np.array(picked)


def fourier_coeff_b(sample: EigenvalueSample, cfg: MesoscopicConfig, s: float) -> complex:
    """b_N(s) = s^(-1/2) sum_j exp(-i s d_N (x_j - x0)), s > 0."""
    if s <= 0.0:
        raise ValueError(f"s must be positive, got {s}")
    d = cfg.scale(sample.n)
    return complex(np.sum(np.exp(-1j * s * d * (sample.values - cfg.x0))) / math.sqrt(s))


def _panel_nodes(lo: float, hi: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite 32-point Gauss-Legendre nodes and weights on [lo, hi]."""
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (half[:, None] * _GL32_X[None, :] + mid[:, None]).ravel()
    weights = (half[:, None] * _GL32_W[None, :]).ravel()
    return nodes, weights


def xi_hat(xi: TestFunction, y, panels: int | None = None) -> np.ndarray:
    """f(y) = integral of xi(s) s^(-1/2) e^(-isy) ds over the bump support.

    Composite Gauss-Legendre with panel count scaled to the oscillation
    y * support width; target absolute error 1e-9.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    lo, hi = xi.support
    if panels is None:
        # ~2 oscillation cycles per 32-node panel
        panels = max(8, int(np.ceil((hi - lo) * (np.max(np.abs(y)) + 2.0) / 6.0)))
    nodes, weights = _panel_nodes(lo, hi, panels)
    vals = xi(nodes) / np.sqrt(nodes) * weights
    return np.exp(-1j * np.outer(y, nodes)) @ vals


def smeared_coeff_c(
    sample: EigenvalueSample, cfg: MesoscopicConfig, xi: TestFunction
) -> complex:
    """c_N(xi), by two independent routes that must agree.

    Route 1 integrates xi(s) b_N(s) ds directly; route 2 evaluates
    sum_j f(d_N (x_j - x0)) with f the smeared kernel from ``xi_hat``.
    The second is returned; disagreement beyond 1e-7 * N or failure of
    the quadrature to settle under refinement raises QuadratureError.
    """
    d = cfg.scale(sample.n)
    args = d * (sample.values - cfg.x0)
    lo, hi = xi.support

    base_panels = max(8, int(np.ceil((hi - lo) * (np.max(np.abs(args)) + 2.0) / 6.0)))
    route2_coarse = complex(np.sum(xi_hat(xi, args, panels=base_panels)))
    route2 = complex(np.sum(xi_hat(xi, args, panels=2 * base_panels)))
    settle = abs(route2 - route2_coarse)
    if settle > 1e-8 * max(1.0, abs(route2)):
        raise QuadratureError("smearing quadrature did not settle under refinement", settle)

    nodes, weights = _panel_nodes(lo, hi, 2 * base_panels)
    b_vals = np.exp(-1j * np.outer(nodes, args)).sum(axis=1) / np.sqrt(nodes)
    route1 = complex(np.sum(xi(nodes) * b_vals * weights))
    gap = abs(route1 - route2)
    if gap > 1e-7 * sample.n:
        raise QuadratureError("independent smearing routes disagree", gap)
    return route2
