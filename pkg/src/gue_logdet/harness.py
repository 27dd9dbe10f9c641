"""Replicated Monte Carlo runner and statistical verdict helpers.

The runner executes a per-replicate callable under a splittable RNG
stream keyed by (seed, replicate), so results are bit-identical
regardless of worker count or execution order.  Verdicts compare an
estimate against a prediction with tolerance max(k * SE, floor) and are
collected into plain-dict-serializable reports.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable

import numpy as np
from scipy.special import kolmogorov, ndtr

from .sampling import SeedTag

ReplicateFn = Callable[[SeedTag], np.ndarray]


def _run_one(args: tuple[ReplicateFn, int, int]) -> np.ndarray:
    fn, seed, replicate = args
    return np.asarray(fn((seed, replicate)), dtype=float)


def run_replicated(fn: ReplicateFn, reps: int, seed: int, workers: int = 1) -> np.ndarray:
    """Stack ``reps`` independent replicate rows into an (R, k) array.

    ``fn`` receives the (seed, replicate) tag, derives its stream from
    it (the samplers do this internally), and returns a 1-D statistic
    vector.  Rows are ordered by replicate index, so serial and
    parallel runs agree exactly.
    """
    if reps < 1:
        raise ValueError(f"need at least one replicate, got {reps}")
    if workers < 1:
        raise ValueError(f"need at least one worker, got {workers}")
    if workers == 1:
        rows = [_run_one((fn, seed, r)) for r in range(reps)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, [(fn, seed, r) for r in range(reps)], chunksize=64))
    out = np.vstack([np.atleast_1d(r) for r in rows])
    if out.shape[0] != reps:
        raise RuntimeError("replicate count mismatch after merge")
    return out


@dataclasses.dataclass(frozen=True)
class SampleStats:
    """Moment summaries of an (R, k) replicate matrix with plug-in SEs."""

    reps: int
    mean: np.ndarray
    se_mean: np.ndarray
    var: np.ndarray
    se_var: np.ndarray
    cov: np.ndarray

    @classmethod
    def from_rows(cls, rows: np.ndarray) -> "SampleStats":
        rows = np.asarray(rows, dtype=float)
        if rows.ndim == 1:
            rows = rows[:, None]
        r = rows.shape[0]
        if r < 2:
            raise ValueError(f"need at least two replicates, got {r}")
        mean = rows.mean(axis=0)
        centered = rows - mean
        cov = centered.T @ centered / (r - 1)
        var = np.diag(cov).copy()
        # SE of the sample variance from the fourth central moment
        m4 = np.mean(centered**4, axis=0)
        var_of_var = (m4 - var * var * (r - 3) / (r - 1)) / r
        se_var = np.sqrt(np.maximum(var_of_var, 0.0))
        se_mean = np.sqrt(var / r)
        return cls(reps=r, mean=mean, se_mean=se_mean, var=var, se_var=se_var, cov=cov)

    def se_cov(self, i: int, j: int, rows: np.ndarray) -> float:
        """First-order SE of the (i, j) sample covariance."""
        rows = np.asarray(rows, dtype=float)
        prod = (rows[:, i] - self.mean[i]) * (rows[:, j] - self.mean[j])
        return float(np.sqrt(max(np.mean(prod**2) - self.cov[i, j] ** 2, 0.0) / self.reps))


def ks_normality_pvalue(samples: np.ndarray) -> float:
    """Kolmogorov-Smirnov p-value against a fitted normal.

    Samples are studentized by their own mean and standard deviation,
    then D = sup |F_n - Phi| is mapped through the asymptotic
    Kolmogorov distribution.  Degenerate samples are rejected.
    """
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    if n < 100:
        raise ValueError(f"need at least 100 samples for a stable KS test, got {n}")
    std = x.std(ddof=1)
    if std == 0.0:
        raise ValueError("degenerate sample: zero variance")
    z = ndtr((x - x.mean()) / std)
    grid = np.arange(1, n + 1) / n
    d = max(np.max(np.abs(z - grid)), np.max(np.abs(z - grid + 1.0 / n)))
    return float(kolmogorov(math.sqrt(n) * d))


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """One predicted-vs-estimated comparison with its verdict."""

    name: str
    predicted: float
    estimated: float
    se: float
    tolerance: float
    passed: bool
    detail: str = ""
    seed: int | None = None
    wall_time_s: float | None = None

    def to_dict(self, include_wall_time: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "predicted": self.predicted,
            "estimated": self.estimated,
            "se": self.se,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.detail:
            out["detail"] = self.detail
        if self.seed is not None:
            out["seed"] = self.seed
        if include_wall_time and self.wall_time_s is not None:
            out["wall_time_s"] = self.wall_time_s
        return out


def compare(
    name: str,
    predicted: float,
    estimated: float,
    se: float,
    k: float = 3.0,
    floor: float = 0.0,
    seed: int | None = None,
    detail: str = "",
) -> VerificationReport:
    """Verdict on |estimated - predicted| <= max(k * se, floor)."""
    if se < 0.0:
        raise ValueError(f"standard error must be nonnegative, got {se}")
    tol = max(k * se, floor)
    passed = bool(abs(estimated - predicted) <= tol)
    return VerificationReport(
        name=name,
        predicted=float(predicted),
        estimated=float(estimated),
        se=float(se),
        tolerance=float(tol),
        passed=passed,
        detail=detail,
        seed=seed,
    )


def with_wall_time(report: VerificationReport, wall_time_s: float) -> VerificationReport:
    """Copy of a report with the wall time filled in."""
    return dataclasses.replace(report, wall_time_s=float(wall_time_s))
