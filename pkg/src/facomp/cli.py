"""Command-line front end: figure sweeps, validation runs, CSV linting.

Global flags (before the subcommand) resolve the run configuration: defaults,
then ``--config`` file values, then flags.  Sweep subcommands write the flat
CSV schema and, unless ``--no-plot`` is given, a PNG figure next to it.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import click

from .config import RunConfig, load_config, parse_float_maybe_db
from .exceptions import FacompError
from .montecarlo import empirical_cdf, run_mse_trials
from .plotting import render_sweep_figure, render_validation_figure
from .sweep import (
    SweepSpec,
    default_tau_grid,
    lint_csv,
    run_sweep,
    write_rows_csv,
)
from .validation import render_report, run_validation

_DEFAULT_OUT = {
    "tau": "mse_cdf_vs_tau.csv",
    "n_ports": "mse_cdf_vs_ports.csv",
    "n_users": "mse_cdf_vs_users.csv",
}
_DEFAULT_COUNT_VALUES = tuple(range(1, 17))


def _parse_theta_set(text: str) -> tuple[float, ...]:
    out = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        out.append(math.inf if token in ("inf", "fpa") else float(token))
    if not out:
        raise click.UsageError("empty theta set")
    return tuple(out)


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="Flat key = value configuration file.")
@click.option("--seed", type=click.IntRange(min=0), default=None,
              help="Master seed for all random streams.")
@click.option("--trials", type=click.IntRange(min=0), default=None,
              help="Monte-Carlo trials per cell (0 = analytic only).")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Output path (CSV for sweeps, report copy for validate).")
@click.option("--users", type=click.IntRange(min=1), default=None, help="Number of users K.")
@click.option("--ports", type=click.IntRange(min=1), default=None, help="Number of ports N.")
@click.option("--theta", type=float, default=None, help="Dependence parameter (>= 1).")
@click.option("--pmax", type=str, default=None,
              help="Transmit power budget, linear (suffix dB to convert).")
@click.option("--sigma2", type=str, default=None,
              help="Noise power, linear (suffix dB to convert).")
@click.option("--tau", type=float, default=None, help="MSE threshold for fixed-threshold sweeps.")
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True,
              help="Worker threads for trial chunks (results are identical).")
@click.pass_context
def main(ctx, config_path, seed, trials, out, users, ports, theta, pmax, sigma2, tau, jobs):
    """Aggregation-MSE statistics for fluid-antenna over-the-air computation."""
    try:
        cfg = load_config(config_path) if config_path else RunConfig()
        cfg = cfg.with_overrides(
            users=users,
            ports=ports,
            theta=theta,
            pmax=None if pmax is None else parse_float_maybe_db(pmax, db_ok=True),
            sigma2=None if sigma2 is None else parse_float_maybe_db(sigma2, db_ok=True),
            tau=tau,
            trials=trials,
            seed=seed,
            out=out,
        )
    except (FacompError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    ctx.obj = {"config": cfg, "jobs": jobs}


def _emit_sweep(cfg: RunConfig, spec: SweepSpec, plot: bool) -> None:
    rows = run_sweep(spec)
    out = Path(cfg.out or _DEFAULT_OUT[spec.variable])
    write_rows_csv(rows, out)
    click.echo(f"wrote {out}")
    if plot:
        figure_path = out.with_suffix(".png")
        render_sweep_figure(rows, figure_path)
        click.echo(f"wrote {figure_path}")


@main.command("cdf-vs-tau")
@click.option("--theta-set", default="1,2,5,inf", show_default=True,
              help="Comma-separated dependence levels; inf (or fpa) is the baseline.")
@click.option("--grid", default=None, metavar="START,STOP,COUNT",
              help="Log-spaced threshold grid (default 0.01,10,60).")
@click.option("--values", default=None, metavar="T1,T2,...",
              help="Explicit threshold values instead of a grid.")
@click.option("--plot/--no-plot", default=True, show_default=True)
@click.pass_context
def cdf_vs_tau(ctx, theta_set, grid, values, plot):
    """CDF of the aggregation MSE versus the target threshold."""
    cfg = ctx.obj["config"]
    try:
        if values is not None:
            taus = _parse_floats(values)
        elif grid is not None:
            start, stop, count = grid.split(",")
            taus = tuple(default_tau_grid(float(start), float(stop), int(count)))
        else:
            taus = tuple(default_tau_grid())
        spec = SweepSpec(
            variable="tau",
            values=taus,
            base=cfg.scenario(),
            n_trials=cfg.trials,
            master_seed=cfg.seed,
            threshold=cfg.tau,
            theta_set=_parse_theta_set(theta_set),
            n_jobs=ctx.obj["jobs"],
        )
        _emit_sweep(cfg, spec, plot)
    except (FacompError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


def _count_sweep(ctx, variable, theta_set, values, plot):
    cfg = ctx.obj["config"]
    try:
        spec = SweepSpec(
            variable=variable,
            values=_parse_ints(values) if values is not None else _DEFAULT_COUNT_VALUES,
            base=cfg.scenario(),
            n_trials=cfg.trials,
            master_seed=cfg.seed,
            threshold=cfg.tau,
            theta_set=_parse_theta_set(theta_set),
            n_jobs=ctx.obj["jobs"],
        )
        _emit_sweep(cfg, spec, plot)
    except (FacompError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc


@main.command("cdf-vs-ports")
@click.option("--theta-set", default="1,2,5,inf", show_default=True,
              help="Comma-separated dependence levels; inf (or fpa) is the baseline.")
@click.option("--values", default=None, metavar="N1,N2,...",
              help="Port counts to sweep (default 1..16).")
@click.option("--plot/--no-plot", default=True, show_default=True)
@click.pass_context
def cdf_vs_ports(ctx, theta_set, values, plot):
    """CDF of the aggregation MSE versus the number of ports at fixed threshold."""
    _count_sweep(ctx, "n_ports", theta_set, values, plot)


@main.command("cdf-vs-users")
@click.option("--theta-set", default="1,2,5,inf", show_default=True,
              help="Comma-separated dependence levels; inf (or fpa) is the baseline.")
@click.option("--values", default=None, metavar="K1,K2,...",
              help="User counts to sweep (default 1..16).")
@click.option("--plot/--no-plot", default=True, show_default=True)
@click.pass_context
def cdf_vs_users(ctx, theta_set, values, plot):
    """CDF of the aggregation MSE versus the number of users at fixed threshold."""
    _count_sweep(ctx, "n_users", theta_set, values, plot)


@main.command()
@click.option("--analytic-theta", type=float, default=None,
              help="Diagnostic: KS-compare against this dependence level instead.")
@click.option("--plot", "plot_path", type=click.Path(dir_okay=False), default=None,
              help="Render the ECDF-versus-analytic overlay to this file.")
@click.pass_context
def validate(ctx, analytic_theta, plot_path):
    """Check Monte-Carlo output against the closed forms; exit 1 on failure."""
    cfg = ctx.obj["config"]
    scenario = cfg.scenario()
    try:
        report = run_validation(
            scenario,
            cfg.trials,
            cfg.seed,
            n_jobs=ctx.obj["jobs"],
            analytic_theta=analytic_theta,
        )
    except (FacompError, ValueError) as exc:
        raise click.UsageError(str(exc)) from exc
    text = render_report(report)
    click.echo(text, nl=False)
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    if plot_path:
        from .analytics import mse_cdf_curve
        from .sweep import default_tau_grid as grid

        batch = run_mse_trials(scenario, cfg.trials, cfg.seed, n_jobs=ctx.obj["jobs"])
        curve = mse_cdf_curve(grid(), scenario)
        render_validation_figure(empirical_cdf(batch), curve, plot_path)
        click.echo(f"wrote {plot_path}")
    if not report.passed:
        sys.exit(1)


@main.command("lint-csv")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
def lint_csv_command(path):
    """Check an emitted CSV against the monotonicity family; exit 1 on violations."""
    problems = lint_csv(path)
    for problem in problems:
        click.echo(f"LINT {problem}")
    if problems:
        click.echo(f"RESULT FAIL violations={len(problems)}")
        sys.exit(1)
    click.echo("RESULT PASS violations=0")


if __name__ == "__main__":
    main()
