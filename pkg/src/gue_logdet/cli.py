"""Command line entry point.

Subcommands: macro, meso, whitenoise, oracle, identities, verify-all.
Every subcommand accepts the shared flags --n --reps --seed --alpha
--eta --x0 --kmax --out --format --config (flags not meaningful for a
given subcommand are ignored).  Parameter precedence, lowest first:
built-in defaults, the SEED environment variable, the config file,
command line flags.

Exit codes: 0 all checks passed, 1 at least one check failed,
2 usage or configuration error.

With --out DIR each command writes its table (csv or json per
--format), a figure, and for verify-all a summary.json that is
byte-identical across reruns with the same seed (wall times go to
run_log.txt instead).
"""

from __future__ import annotations

import argparse
import dataclasses
import importlib.resources
import json
import os
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__, experiments, plots
from .harness import VerificationReport
from .predictions import verify_szego_asymptotic
from .spectra import MesoscopicConfig, TestFunction

_TOOL = "gue-logdet"

# per-command defaults for the shared numeric flags
_DEFAULTS: dict[str, dict] = {
    "macro": {"n": 256, "reps": 2000, "x0": 0.0},
    "meso": {"n": 1024, "reps": 2000, "eta": 1.0, "alpha": 0.5, "x0": 0.0},
    "whitenoise": {"n": 1024, "reps": 2000, "alpha": 0.6, "x0": 0.0},
    "oracle": {"n": 50, "reps": 2000},
    "identities": {},
    "verify-all": {},
}


class ConfigError(Exception):
    """Bad config file or flag value; maps to exit code 2."""


def _parse_config_file(path: str) -> dict:
    """Flat key=value lines; blank lines and # comments are skipped."""
    out: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in ("n", "reps", "seed", "kmax"):
            try:
                out[key] = int(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {key} must be an integer") from exc
        elif key in ("alpha", "eta", "x0"):
            try:
                out[key] = float(value)
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: {key} must be a number") from exc
        else:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
    return out


def _resolve_params(args: argparse.Namespace) -> dict:
    """Merge defaults, SEED env, config file, and flags (in that order)."""
    params = {"seed": experiments.DEFAULT_SEED, "kmax": 4096}
    params.update(_DEFAULTS[args.command])
    env_seed = os.environ.get("SEED")
    if env_seed is not None:
        try:
            params["seed"] = int(env_seed)
        except ValueError as exc:
            raise ConfigError(f"SEED environment variable must be an integer, got {env_seed!r}") from exc
    if args.config is not None:
        params.update(_parse_config_file(args.config))
    for key in ("n", "reps", "seed", "alpha", "eta", "x0", "kmax"):
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            params[key] = value
    if params["seed"] < 0:
        raise ConfigError(f"seed must be nonnegative, got {params['seed']}")
    for key in ("n", "reps", "kmax"):
        if key in params and params[key] is not None and params[key] < 1:
            raise ConfigError(f"{key} must be positive, got {params[key]}")
    return params


def _metadata(command: str, params: dict, wall_time_s: float) -> dict:
    return {
        "tool": _TOOL,
        "version": __version__,
        "command": command,
        "seed": params.get("seed"),
        "config": {k: v for k, v in sorted(params.items()) if k != "seed"},
        "wall_time_s": round(wall_time_s, 3),
    }


def _write_table(
    path: Path, fmt: str, command: str, params: dict, wall: float, header: list[str], rows: list[dict]
) -> None:
    meta = _metadata(command, params, wall)
    if fmt == "json":
        payload = dict(meta)
        payload["table"] = rows
        path.with_suffix(".json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_format_cell(row[h]) for h in header))
    path.with_suffix(".csv").write_text("\n".join(lines) + "\n")


def _format_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _report_rows(reports: list[VerificationReport]) -> list[dict]:
    return [r.to_dict(include_wall_time=False) for r in reports]


_REPORT_HEADER = ["name", "predicted", "estimated", "se", "tolerance", "passed"]


def _print_reports(reports: list[VerificationReport]) -> None:
    for r in reports:
        verdict = "PASS" if r.passed else "FAIL"
        print(
            f"[{verdict}] {r.name}: predicted={r.predicted:.6g} estimated={r.estimated:.6g} "
            f"tol={r.tolerance:.3g}"
        )


def _stdout_table(header: list[str], rows: list[dict]) -> None:
    print(",".join(header))
    for row in rows:
        print(",".join(_format_cell(row[h]) for h in header))


def _normalize_report_row(row: dict) -> dict:
    out = {h: row.get(h, "") for h in _REPORT_HEADER}
    return out


def _run_macro(params: dict, out_dir: Path | None, fmt: str) -> list[VerificationReport]:
    n = params["n"]
    if n < 16:
        raise ConfigError(f"macro needs n >= 16, got {n}")
    sizes = (n // 4, n // 2, n)
    t0 = time.perf_counter()
    rows, reports = experiments.run_macro(sizes, params["reps"], params["seed"], x0=params.get("x0", 0.0))
    wall = time.perf_counter() - t0
    header = ["n", "mean", "var", "se_var", "predicted_var"]
    if out_dir is not None:
        _write_table(out_dir / "macro", fmt, "macro", params, wall, header, rows)
        plots.plot_macro(rows, str(out_dir / "macro_variance.png"))
    else:
        _stdout_table(header, rows)
    _print_reports(reports)
    return reports


def _run_meso(params: dict, out_dir: Path | None, fmt: str) -> list[VerificationReport]:
    cfg = MesoscopicConfig(x0=params.get("x0", 0.0), eta=params.get("eta", 1.0), alpha=params.get("alpha", 0.5))
    taus = (0.0, 0.5, 1.0, 2.0)
    t0 = time.perf_counter()
    table, reports = experiments.run_meso(params["n"], params["reps"], params["seed"], cfg, taus)
    wall = time.perf_counter() - t0
    header = ["tau", "upsilon", "empirical", "predicted", "se"]
    if out_dir is not None:
        _write_table(out_dir / "meso", fmt, "meso", params, wall, header, table)
        plots.plot_meso(table, str(out_dir / "meso_covariance.png"))
    else:
        _stdout_table(header, table)
    _print_reports(reports)
    return reports


def _run_whitenoise(params: dict, out_dir: Path | None, fmt: str) -> list[VerificationReport]:
    cfg = MesoscopicConfig(x0=params.get("x0", 0.0), eta=1.0, alpha=params.get("alpha", 0.6))
    bumps = (TestFunction(2.0, 0.5), TestFunction(4.0, 0.5))
    t0 = time.perf_counter()
    reports = experiments.run_whitenoise(params["n"], params["reps"], params["seed"], cfg, bumps)
    wall = time.perf_counter() - t0
    rows = [_normalize_report_row(r) for r in _report_rows(reports)]
    if out_dir is not None:
        _write_table(out_dir / "whitenoise", fmt, "whitenoise", params, wall, _REPORT_HEADER, rows)
        plots.plot_whitenoise(bumps, str(out_dir / "whitenoise_bumps.png"))
    else:
        _stdout_table(_REPORT_HEADER, rows)
    _print_reports(reports)
    return reports


def _run_oracle(params: dict, out_dir: Path | None, fmt: str) -> list[VerificationReport]:
    t0 = time.perf_counter()
    table, reports = experiments.run_oracle(params["n"], params["reps"], params["seed"])
    wall = time.perf_counter() - t0
    header = ["order", "mean_exact", "mean_mc", "se_mean", "var_exact", "var_mc", "se_var", "var_limit"]
    if out_dir is not None:
        _write_table(out_dir / "oracle", fmt, "oracle", params, wall, header, table)
        plots.plot_oracle(table, str(out_dir / "oracle_traces.png"))
    else:
        _stdout_table(header, table)
    _print_reports(reports)
    return reports


def _run_identities(params: dict, out_dir: Path | None, fmt: str) -> list[VerificationReport]:
    t0 = time.perf_counter()
    reports = experiments.identity_reports(params["seed"]) + experiments.barnes_reports()
    wall = time.perf_counter() - t0
    rows = [_normalize_report_row(r) for r in _report_rows(reports)]
    if out_dir is not None:
        _write_table(out_dir / "identities", fmt, "identities", params, wall, _REPORT_HEADER, rows)
        decay = verify_szego_asymptotic(1.0, -0.5, eta=1.0, d_sequence=np.geomspace(100.0, 10000.0, 9))
        plots.plot_identities(decay, str(out_dir / "identity_decay.png"))
    else:
        _stdout_table(_REPORT_HEADER, rows)
    _print_reports(reports)
    return reports


def _summary_payload(seed: int, results: list[experiments.CriterionResult]) -> dict:
    return {
        "tool": _TOOL,
        "version": __version__,
        "command": "verify-all",
        "seed": seed,
        "workers": 1,
        "all_passed": all(r.passed for r in results),
        "criteria": [
            {
                "index": r.index,
                "name": r.name,
                "title": r.title,
                "passed": r.passed,
                "config": r.config,
                "reports": [c.to_dict(include_wall_time=False) for c in r.reports],
            }
            for r in results
        ],
    }


def _load_schema() -> dict:
    ref = importlib.resources.files("gue_logdet") / "schema" / "verify_summary.schema.json"
    return json.loads(ref.read_text())


def _run_verify_all(params: dict, out_dir: Path | None) -> bool:
    seed = params["seed"]
    t0 = time.perf_counter()
    results = experiments.verify_all(seed=seed)
    total_wall = time.perf_counter() - t0
    for r in results:
        print(r.summary_line())
    payload = _summary_payload(seed, results)
    jsonschema.validate(payload, _load_schema())
    if out_dir is not None:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
        (out_dir / "summary.json").write_text(text)
        log_lines = [f"# {_TOOL} {__version__} verify-all seed={seed}"]
        log_lines.append(f"# started {datetime.now(timezone.utc).isoformat()}")
        for r in results:
            log_lines.append(f"{r.name} {'PASS' if r.passed else 'FAIL'} {r.wall_time_s:.2f}s")
        log_lines.append(f"total {total_wall:.2f}s")
        (out_dir / "run_log.txt").write_text("\n".join(log_lines) + "\n")
        plots.plot_verify(results, str(out_dir / "verify_margins.png"))
    return payload["all_passed"]


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--n", type=int, default=None, help="matrix size")
    shared.add_argument("--reps", type=int, default=None, help="Monte Carlo replicates")
    shared.add_argument("--seed", type=int, default=None, help="master seed (default: SEED env or built-in)")
    shared.add_argument("--alpha", type=float, default=None, help="mesoscopic scale exponent in d = N^alpha")
    shared.add_argument("--eta", type=float, default=None, help="regularization height")
    shared.add_argument("--x0", type=float, default=None, help="spectral center point")
    shared.add_argument("--kmax", type=int, default=None, help="Chebyshev truncation order")
    shared.add_argument("--out", type=str, default=None, help="output directory for tables and figures")
    shared.add_argument("--format", choices=("csv", "json"), default="csv", help="table format")
    shared.add_argument("--config", type=str, default=None, help="flat key=value config file")

    parser = argparse.ArgumentParser(
        prog=_TOOL,
        description="Monte Carlo verification of log-determinant statistics for the gaussian unitary ensemble",
    )
    parser.add_argument("--version", action="version", version=f"{_TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("macro", parents=[shared], help="variance growth of D_N at a fixed point")
    sub.add_parser("meso", parents=[shared], help="mesoscopic increment covariance table")
    sub.add_parser("whitenoise", parents=[shared], help="smeared white-noise functional statistics")
    sub.add_parser("oracle", parents=[shared], help="Monte Carlo vs exact finite-N kernel")
    sub.add_parser("identities", parents=[shared], help="deterministic identity battery")
    sub.add_parser("verify-all", parents=[shared], help="full pinned acceptance battery")
    return parser


_RUNNERS = {
    "macro": _run_macro,
    "meso": _run_meso,
    "whitenoise": _run_whitenoise,
    "oracle": _run_oracle,
    "identities": _run_identities,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = _resolve_params(args)
        out_dir = None
        if args.out is not None:
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "verify-all":
            ok = _run_verify_all(params, out_dir)
        else:
            reports = _RUNNERS[args.command](params, out_dir, args.format)
            ok = all(r.passed for r in reports)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
