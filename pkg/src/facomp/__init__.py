"""Fluid-antenna assisted over-the-air computation under correlated fading.

Library layout:

- :mod:`facomp.copula` - Gumbel copula evaluation, Kendall-tau calibration,
  positive-stable frailty sampling of dependent uniforms
- :mod:`facomp.channel` - correlated Rayleigh power gains and port selection
- :mod:`facomp.analytics` - closed-form CDFs of the aggregation MSE
- :mod:`facomp.montecarlo` - reproducible trial engine and signal-level oracle
- :mod:`facomp.stats` - KS distance and Kendall-tau estimation
- :mod:`facomp.sweep`, :mod:`facomp.validation`, :mod:`facomp.plotting`,
  :mod:`facomp.cli` - sweeps, validation reports, figures, command line
"""

from .analytics import (
    CdfCurve,
    Scenario,
    effective_gain_cdf,
    fpa_mse_cdf,
    fpa_mse_cdf_curve,
    mse_cdf,
    mse_cdf_curve,
    mse_from_channels,
    user_mse_cdf,
)
from .channel import (
    PortLayout,
    PortSelection,
    gains_from_copula,
    port_positions,
    sample_effective_gain,
    select_port,
)
from .config import RunConfig, load_config, parse_config
from .copula import (
    COMONOTONE_THETA,
    DependenceParam,
    FrailtyDraw,
    draw_frailty,
    gumbel_cdf,
    gumbel_generator,
    kendall_tau_from_theta,
    sample_gumbel_copula,
    sample_positive_stable,
    theta_from_kendall_tau,
)
from .exceptions import (
    ConfigError,
    EmptyInputError,
    FacompError,
    ParameterError,
    TiesError,
    TrialCapError,
)
from .montecarlo import (
    EmpiricalCdf,
    TrialBatch,
    derived_rng,
    empirical_cdf,
    power_constraint_check,
    run_mse_trials,
    signal_level_oracle,
    zf_misalignment,
)
from .stats import (
    KsResult,
    kendall_tau_estimate,
    kendall_tau_naive,
    ks_statistic,
    ks_test,
    ks_threshold,
)
from .sweep import SweepSpec, default_tau_grid, lint_csv, lint_rows, run_sweep, write_rows_csv
from .validation import ValidationReport, render_report, run_validation

__version__ = "0.1.0"

__all__ = [
    "COMONOTONE_THETA",
    "CdfCurve",
    "ConfigError",
    "DependenceParam",
    "EmpiricalCdf",
    "EmptyInputError",
    "FacompError",
    "FrailtyDraw",
    "KsResult",
    "ParameterError",
    "PortLayout",
    "PortSelection",
    "RunConfig",
    "Scenario",
    "SweepSpec",
    "TiesError",
    "TrialBatch",
    "TrialCapError",
    "ValidationReport",
    "default_tau_grid",
    "derived_rng",
    "draw_frailty",
    "effective_gain_cdf",
    "empirical_cdf",
    "fpa_mse_cdf",
    "fpa_mse_cdf_curve",
    "gains_from_copula",
    "gumbel_cdf",
    "gumbel_generator",
    "kendall_tau_estimate",
    "kendall_tau_from_theta",
    "kendall_tau_naive",
    "ks_statistic",
    "ks_test",
    "ks_threshold",
    "lint_csv",
    "lint_rows",
    "load_config",
    "mse_cdf",
    "mse_cdf_curve",
    "mse_from_channels",
    "parse_config",
    "port_positions",
    "power_constraint_check",
    "render_report",
    "run_mse_trials",
    "run_sweep",
    "run_validation",
    "sample_effective_gain",
    "sample_gumbel_copula",
    "sample_positive_stable",
    "select_port",
    "signal_level_oracle",
    "theta_from_kendall_tau",
    "user_mse_cdf",
    "write_rows_csv",
    "zf_misalignment",
]
