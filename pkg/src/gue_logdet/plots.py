"""Figure rendering for the CLI report paths (headless Agg backend)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .experiments import CriterionResult
from .predictions import SzegoDecayReport
from .spectra import TestFunction, xi_hat

_DPI = 150


def plot_macro(rows: list[dict], path: str) -> None:
    """Sample variance of D_N(x0) against the 1/2 log N prediction."""
    ns = np.array([r["n"] for r in rows], dtype=float)
    var = np.array([r["var"] for r in rows])
    se = np.array([r["se_var"] for r in rows])
    pred = np.array([r["predicted_var"] for r in rows])
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.errorbar(np.log(ns), var, yerr=2.0 * se, fmt="o", capsize=3, label="sample variance")
    ax.plot(np.log(ns), pred, "--", label="1/2 log N + const")
    ax.set_xlabel("log N")
    ax.set_ylabel("Var D_N")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_meso(table: list[dict], path: str) -> None:
    """Empirical vs predicted increment covariances with 3 SE bars."""
    pred = np.array([r["predicted"] for r in table])
    emp = np.array([r["empirical"] for r in table])
    se = np.array([r["se"] for r in table])
    fig, ax = plt.subplots(figsize=(4.2, 4.0))
    ax.errorbar(pred, emp, yerr=3.0 * se, fmt="o", capsize=3)
    lim = (min(pred.min(), emp.min()) - 0.1, max(pred.max(), emp.max()) + 0.1)
    ax.plot(lim, lim, "--", lw=1.0)
    ax.set_xlabel("predicted covariance")
    ax.set_ylabel("empirical covariance")
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_whitenoise(bumps: tuple[TestFunction, ...], path: str) -> None:
    """The smearing bumps and the decay of their kernels f(y)."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 3.2))
    hi = max(b.support[1] for b in bumps) + 0.5
    s = np.linspace(0.0, hi, 600)
    y = np.linspace(-30.0, 30.0, 1200)
    for i, b in enumerate(bumps):
        ax1.plot(s, b(s), label=f"xi_{i + 1}")
        ax2.semilogy(y, np.abs(xi_hat(b, y)) + 1e-16, label=f"|f_{i + 1}|")
    ax1.set_xlabel("s")
    ax1.set_ylabel("xi(s)")
    ax1.legend(frameon=False)
    ax2.set_xlabel("y")
    ax2.set_ylabel("|f(y)|")
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_oracle(table: list[dict], path: str) -> None:
    """Exact kernel means/variances next to their Monte Carlo estimates."""
    orders = [r["order"] for r in table]
    x = np.arange(len(orders), dtype=float)
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7.0, 3.2))
    ax1.bar(x - 0.18, [r["mean_exact"] for r in table], width=0.36, label="exact")
    ax1.bar(x + 0.18, [r["mean_mc"] for r in table], width=0.36, label="Monte Carlo")
    ax1.set_xticks(x, [f"T{k}" for k in orders])
    ax1.set_ylabel("mean")
    ax1.legend(frameon=False)
    ax2.bar(x - 0.18, [r["var_exact"] for r in table], width=0.36, label="exact")
    ax2.bar(x + 0.18, [r["var_mc"] for r in table], width=0.36, label="Monte Carlo")
    ax2.plot(x, [r["var_limit"] for r in table], "k_", ms=18, label="n/4 limit")
    ax2.set_xticks(x, [f"T{k}" for k in orders])
    ax2.set_ylabel("variance")
    ax2.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_identities(decay: SzegoDecayReport, path: str) -> None:
    """Log-log decay of the two-point Szego asymptotic error."""
    fig, ax = plt.subplots(figsize=(4.6, 3.4))
    ax.loglog(decay.d_values, decay.errors, "o-", label="residual")
    fit = np.exp(decay.intercept) * decay.d_values**decay.slope
    ax.loglog(decay.d_values, fit, "--", label=f"slope {decay.slope:.3f}")
    ax.set_xlabel("scale d")
    ax.set_ylabel("asymptotic error")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)


def plot_verify(results: list[CriterionResult], path: str) -> None:
    """Pass counts per criterion, failures highlighted."""
    names = [r.name for r in results]
    totals = np.array([len(r.reports) for r in results], dtype=float)
    passed = np.array([sum(int(c.passed) for c in r.reports) for r in results], dtype=float)
    y = np.arange(len(names))
    fig, ax = plt.subplots(figsize=(6.0, 0.45 * len(names) + 1.2))
    colors = ["tab:green" if r.passed else "tab:red" for r in results]
    ax.barh(y, passed / totals, color=colors)
    ax.set_yticks(y, names)
    ax.set_xlim(0.0, 1.05)
    ax.set_xlabel("fraction of checks passed")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
