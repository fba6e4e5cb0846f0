"""End-to-end validation: Monte-Carlo against closed form, calibration, oracle.

The report is line-oriented: one ``CHECK <name> PASS|FAIL statistic=<v>
threshold=<v>`` line per check (plus informative key=value extras), then a
``RESULT`` summary.  The process exit status of the CLI wrapper is 0 only
when every check passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace as dc_replace

import numpy as np

from .analytics import Scenario, mse_cdf, mse_from_channels
from .channel import sample_effective_gain
from .copula import DependenceParam, sample_gumbel_copula
from .exceptions import ParameterError
from .montecarlo import (
    derived_rng,
    empirical_cdf,
    run_mse_trials,
    signal_level_oracle,
    zf_misalignment,
)
from .stats import kendall_tau_estimate, ks_statistic

# KS pass bar: 2 / sqrt(n), the 5% asymptotic critical value (1.358 / sqrt(n))
# with headroom; 0.02 at the reference 10^4 trials.
KS_SLACK_COEFF = 2.0
KENDALL_TOLERANCE = 0.02
ORACLE_RELATIVE_TOLERANCE = 0.02
KENDALL_PAIRS = 100_000
ORACLE_SYMBOL_DRAWS = 100_000

_KENDALL_STREAM = 1
_ORACLE_STREAM = 2


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    statistic: float
    threshold: float
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple
    scenario: Scenario
    n_trials: int
    master_seed: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _fmt(value: float) -> str:
    return repr(float(value))


def render_report(report: ValidationReport) -> str:
    lines = []
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        line = (
            f"CHECK {check.name} {status} "
            f"statistic={_fmt(check.statistic)} threshold={_fmt(check.threshold)}"
        )
        for key, value in check.extra.items():
            line += f" {key}={_fmt(value)}"
        lines.append(line)
    failures = sum(1 for c in report.checks if not c.passed)
    status = "PASS" if failures == 0 else "FAIL"
    lines.append(f"RESULT {status} checks={len(report.checks)} failures={failures}")
    return "\n".join(lines) + "\n"


def run_validation(
    scenario: Scenario,
    n_trials: int,
    master_seed: int,
    n_jobs: int = 1,
    analytic_theta: float | None = None,
) -> ValidationReport:
    """Run the full validation suite for one scenario.

    ``analytic_theta`` substitutes a different dependence level into the
    closed-form reference of the KS check only; sampling always follows the
    scenario.  A mismatched value should make the KS check fail, which is a
    useful sensitivity probe.
    """
    if n_trials < 1000:
        raise ParameterError("validation needs at least 1000 trials")
    checks = []

    # Monte-Carlo ECDF against the closed-form MSE CDF
    batch = run_mse_trials(scenario, n_trials, master_seed, n_jobs=n_jobs)
    reference = scenario
    if analytic_theta is not None:
        reference = dc_replace(scenario, dep=DependenceParam(analytic_theta))
    stat = ks_statistic(empirical_cdf(batch), lambda t: mse_cdf(t, reference))
    thr = KS_SLACK_COEFF / math.sqrt(n_trials)
    checks.append(CheckResult("mse_ks", stat <= thr, stat, thr))

    # Kendall-tau calibration of the copula sampler
    rng = derived_rng(master_seed, _KENDALL_STREAM)
    pairs = sample_gumbel_copula(2, scenario.dep, rng, size=KENDALL_PAIRS)
    estimate = kendall_tau_estimate(pairs)
    target = 1.0 - 1.0 / scenario.dep.theta
    gap = abs(estimate - target)
    checks.append(
        CheckResult(
            "kendall_tau",
            gap <= KENDALL_TOLERANCE,
            gap,
            KENDALL_TOLERANCE,
            extra={"estimate": estimate, "target": target},
        )
    )

    # Signal-level oracle: alignment identity, then empirical-vs-closed-form MSE
    rng = derived_rng(master_seed, _ORACLE_STREAM)
    gains = sample_effective_gain(scenario.n_ports, scenario.dep, rng, size=scenario.n_users)
    phases = rng.uniform(0.0, 2.0 * np.pi, scenario.n_users)
    channels = np.sqrt(gains) * np.exp(1j * phases)

    misalignment = float(zf_misalignment(channels).max())
    checks.append(CheckResult("zf_misalignment", misalignment <= 0.0, misalignment, 0.0))

    simulated = signal_level_oracle(scenario, channels, ORACLE_SYMBOL_DRAWS, rng)
    closed_form = mse_from_channels(gains, scenario.p_max, scenario.sigma2)
    rel_err = abs(simulated - closed_form) / closed_form
    checks.append(
        CheckResult(
            "zf_relative_error",
            rel_err <= ORACLE_RELATIVE_TOLERANCE,
            rel_err,
            ORACLE_RELATIVE_TOLERANCE,
            extra={"simulated": simulated, "closed_form": closed_form},
        )
    )

    return ValidationReport(
        checks=tuple(checks),
        scenario=scenario,
        n_trials=n_trials,
        master_seed=int(master_seed),
    )
