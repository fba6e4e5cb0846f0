"""Parameter sweeps over threshold, port count, user count, or dependence.

Each sweep evaluates the analytic MSE CDF over a grid, optionally paired with
a Monte-Carlo ECDF column, and emits one flat CSV schema shared by every
sweep kind.  A dependence value of infinity denotes the fixed-antenna
(comonotone) baseline: the analytic column uses the closed-form baseline CDF
and the sampler runs at the comonotone cutoff.

Reruns with identical spec and seed produce byte-identical files; trial
batches for cell i use master_seed + i so cells stay statistically
independent yet reproducible row by row.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace as dc_replace

import numpy as np

from .analytics import Scenario, fpa_mse_cdf, mse_cdf
from .copula import COMONOTONE_THETA, DependenceParam
from .exceptions import ParameterError
from .montecarlo import empirical_cdf, run_mse_trials

CSV_HEADER = (
    "sweep_var",
    "sweep_value",
    "theta",
    "K",
    "N",
    "p_max",
    "sigma2",
    "tau",
    "analytic_cdf",
    "empirical_cdf",
    "n_trials",
    "seed",
)

SWEEP_VARIABLES = ("tau", "n_ports", "n_users", "theta")
DEFAULT_THETA_SET = (1.0, 2.0, 5.0, math.inf)

_LINT_EPS = 1e-12


def default_tau_grid(start: float = 1e-2, stop: float = 10.0, count: int = 60) -> np.ndarray:
    """Logarithmically spaced threshold grid resolving both CDF tails."""
    if not (0.0 < start < stop) or count < 2:
        raise ParameterError("grid needs 0 < start < stop and count >= 2")
    return np.logspace(math.log10(start), math.log10(stop), count)


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: the variable, its values, the base scenario, and MC settings."""

    variable: str
    values: tuple
    base: Scenario
    n_trials: int
    master_seed: int
    output_path: str | None = None
    threshold: float = 0.3
    theta_set: tuple = DEFAULT_THETA_SET
    n_jobs: int = 1

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise ParameterError(f"unknown sweep variable {self.variable!r}")
        values = tuple(self.values)
        if not values:
            raise ParameterError("sweep needs at least one value")
        if self.variable == "tau" and any(not (v > 0.0) for v in values):
            raise ParameterError("threshold values must be positive")
        if self.variable in ("n_ports", "n_users") and any(int(v) < 1 for v in values):
            raise ParameterError(f"{self.variable} values must be >= 1")
        if self.variable == "theta" and any(not (v >= 1.0) for v in values):
            raise ParameterError("theta values must be >= 1")
        if not self.threshold > 0.0:
            raise ParameterError("threshold must be positive")
        if self.n_trials < 0:
            raise ParameterError("n_trials must be nonnegative")
        if self.master_seed < 0:
            raise ParameterError("master seed must be nonnegative")
        theta_set = tuple(float(t) for t in self.theta_set)
        if not theta_set or any(not t >= 1.0 for t in theta_set):
            raise ParameterError("theta set entries must be >= 1 (inf for the FPA baseline)")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "theta_set", theta_set)


def _with_theta(scenario: Scenario, theta: float) -> Scenario:
    """Scenario running at ``theta``; infinity maps to the comonotone cutoff."""
    finite = COMONOTONE_THETA if math.isinf(theta) else theta
    return dc_replace(scenario, dep=DependenceParam(finite))


def _analytic_at(thresholds, scenario: Scenario, theta: float):
    if math.isinf(theta):
        return np.atleast_1d(fpa_mse_cdf(thresholds, scenario))
    return np.atleast_1d(mse_cdf(thresholds, _with_theta(scenario, theta)))


def _row(spec, sweep_value, theta, scenario, tau, analytic, empirical, seed):
    return {
        "sweep_var": spec.variable,
        "sweep_value": sweep_value,
        "theta": theta,
        "K": scenario.n_users,
        "N": scenario.n_ports,
        "p_max": scenario.p_max,
        "sigma2": scenario.sigma2,
        "tau": tau,
        "analytic_cdf": float(analytic),
        "empirical_cdf": None if empirical is None else float(empirical),
        "n_trials": spec.n_trials,
        "seed": seed,
    }


def run_sweep(spec: SweepSpec) -> list[dict]:
    """Produce the sweep rows; one row per (sweep value, dependence level)."""
    rows: list[dict] = []

    if spec.variable == "tau":
        taus = np.asarray(spec.values, dtype=float)
        for curve_idx, theta in enumerate(spec.theta_set):
            seed = spec.master_seed + curve_idx
            analytic = _analytic_at(taus, spec.base, theta)
            ecdf = None
            if spec.n_trials > 0:
                batch = run_mse_trials(
                    _with_theta(spec.base, theta), spec.n_trials, seed, n_jobs=spec.n_jobs
                )
                ecdf = empirical_cdf(batch)
            for tau, a in zip(taus, analytic):
                emp = None if ecdf is None else ecdf(tau)
                rows.append(_row(spec, float(tau), theta, spec.base, float(tau), a, emp, seed))
        return rows

    if spec.variable == "theta":
        for idx, theta in enumerate(spec.values):
            seed = spec.master_seed + idx
            analytic = _analytic_at(spec.threshold, spec.base, theta)[0]
            emp = None
            if spec.n_trials > 0:
                batch = run_mse_trials(
                    _with_theta(spec.base, theta), spec.n_trials, seed, n_jobs=spec.n_jobs
                )
                emp = empirical_cdf(batch)(spec.threshold)
            rows.append(
                _row(spec, float(theta), float(theta), spec.base, spec.threshold, analytic, emp, seed)
            )
        return rows

    # n_ports / n_users sweeps: one MC batch per (value, theta) cell
    field = "n_ports" if spec.variable == "n_ports" else "n_users"
    for curve_idx, theta in enumerate(spec.theta_set):
        for val_idx, value in enumerate(spec.values):
            value = int(value)
            seed = spec.master_seed + curve_idx * len(spec.values) + val_idx
            cell = dc_replace(spec.base, **{field: value})
            analytic = _analytic_at(spec.threshold, cell, theta)[0]
            emp = None
            if spec.n_trials > 0:
                batch = run_mse_trials(
                    _with_theta(cell, theta), spec.n_trials, seed, n_jobs=spec.n_jobs
                )
                emp = empirical_cdf(batch)(spec.threshold)
            rows.append(_row(spec, value, theta, cell, spec.threshold, analytic, emp, seed))
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_rows_csv(rows: list[dict], path) -> None:
    """Write sweep rows under the fixed header; output is byte-stable."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in CSV_HEADER])


def read_rows_csv(path) -> list[dict]:
    """Read a sweep CSV back into typed rows, enforcing the exact header."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise ParameterError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            raise ParameterError(f"{path}: header mismatch, got {','.join(header)}")
        rows = []
        for record in reader:
            if len(record) != len(CSV_HEADER):
                raise ParameterError(f"{path}: malformed row {record!r}")
            raw = dict(zip(CSV_HEADER, record))
            rows.append(
                {
                    "sweep_var": raw["sweep_var"],
                    "sweep_value": float(raw["sweep_value"]),
                    "theta": float(raw["theta"]),
                    "K": int(raw["K"]),
                    "N": int(raw["N"]),
                    "p_max": float(raw["p_max"]),
                    "sigma2": float(raw["sigma2"]),
                    "tau": float(raw["tau"]),
                    "analytic_cdf": float(raw["analytic_cdf"]),
                    "empirical_cdf": None
                    if raw["empirical_cdf"] == ""
                    else float(raw["empirical_cdf"]),
                    "n_trials": int(raw["n_trials"]),
                    "seed": int(raw["seed"]),
                }
            )
    return rows


def _expected_direction(variable: str) -> int:
    # CDF is nondecreasing in tau and N, nonincreasing in K and theta
    return 1 if variable in ("tau", "n_ports") else -1


def lint_rows(rows: list[dict]) -> list[str]:
    """Check the analytic column against the monotonicity family.

    Within each dependence level the analytic CDF must be nondecreasing in
    tau and N and nonincreasing in K and theta; across dependence levels at a
    fixed sweep value it must be nonincreasing in theta (the baseline at
    infinity is the minimum).  Returns human-readable violations, empty when
    clean.
    """
    problems: list[str] = []
    if not rows:
        return ["no data rows"]
    variables = {r["sweep_var"] for r in rows}
    if len(variables) > 1:
        return [f"mixed sweep_var values: {sorted(variables)}"]
    variable = variables.pop()
    if variable not in SWEEP_VARIABLES:
        return [f"unknown sweep_var {variable!r}"]

    for row in rows:
        for col in ("analytic_cdf", "empirical_cdf"):
            v = row[col]
            if v is not None and not (-_LINT_EPS <= v <= 1.0 + _LINT_EPS):
                problems.append(f"{col}={v!r} outside [0, 1]")

    direction = _expected_direction(variable)
    curves: dict[float, list[dict]] = {}
    for row in rows:
        curves.setdefault(row["theta"], []).append(row)
    for theta, curve in curves.items():
        ordered = sorted(curve, key=lambda r: r["sweep_value"])
        for lo, hi in zip(ordered, ordered[1:]):
            step = (hi["analytic_cdf"] - lo["analytic_cdf"]) * direction
            if step < -_LINT_EPS:
                problems.append(
                    f"analytic_cdf not monotone in {variable} at theta={theta!r}: "
                    f"{lo['sweep_value']!r} -> {hi['sweep_value']!r}"
                )

    if variable != "theta" and len(curves) > 1:
        by_value: dict[float, list[tuple[float, float]]] = {}
        for row in rows:
            by_value.setdefault(row["sweep_value"], []).append(
                (row["theta"], row["analytic_cdf"])
            )
        for value, entries in by_value.items():
            entries.sort(key=lambda e: e[0])
            for (t_lo, a_lo), (t_hi, a_hi) in zip(entries, entries[1:]):
                if a_hi - a_lo > _LINT_EPS:
                    problems.append(
                        f"analytic_cdf increases with theta at {variable}={value!r}: "
                        f"theta {t_lo!r} -> {t_hi!r}"
                    )
    return problems


def lint_csv(path) -> list[str]:
    """Lint a sweep CSV file; returns violations, empty when clean."""
    try:
        rows = read_rows_csv(path)
    except ParameterError as exc:
        return [str(exc)]
    return lint_rows(rows)
