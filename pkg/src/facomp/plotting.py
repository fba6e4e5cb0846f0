"""Figure rendering for sweep CSV data and validation overlays.

Figures are drawn straight onto matplotlib Figure objects (no pyplot, no
global state) and written next to the delimited output.  They are a viewing
convenience; the CSV stays the artifact of record.
"""

from __future__ import annotations

import math

import numpy as np
from matplotlib.figure import Figure

from .analytics import CdfCurve
from .exceptions import ParameterError
from .montecarlo import EmpiricalCdf

_AXIS_LABEL = {
    "tau": "MSE threshold",
    "n_ports": "number of ports N",
    "n_users": "number of users K",
    "theta": "dependence parameter theta",
}


def _curve_label(theta: float) -> str:
    if math.isinf(theta):
        return "FPA (comonotone)"
    if theta == 1.0:
        return "theta = 1 (independent)"
    return f"theta = {theta:g}"


def _new_axes(xlabel: str, ylabel: str):
    fig = Figure(figsize=(6.0, 4.0), dpi=150)
    ax = fig.subplots()
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def render_sweep_figure(rows: list[dict], path) -> None:
    """One figure per sweep: analytic lines per dependence level, MC markers."""
    if not rows:
        raise ParameterError("no rows to plot")
    variable = rows[0]["sweep_var"]
    fig, ax = _new_axes(_AXIS_LABEL.get(variable, variable), "CDF of the aggregation MSE")

    curves: dict[float, list[dict]] = {}
    for row in rows:
        curves.setdefault(row["theta"], []).append(row)
    for theta in sorted(curves, key=lambda t: (math.isinf(t), t)):
        pts = sorted(curves[theta], key=lambda r: r["sweep_value"])
        x = [p["sweep_value"] for p in pts]
        analytic = [p["analytic_cdf"] for p in pts]
        (line,) = ax.plot(x, analytic, label=_curve_label(theta))
        empirical = [(p["sweep_value"], p["empirical_cdf"]) for p in pts
                     if p["empirical_cdf"] is not None]
        if empirical:
            ax.plot(
                [e[0] for e in empirical],
                [e[1] for e in empirical],
                linestyle="none",
                marker="o",
                markersize=3.5,
                color=line.get_color(),
            )
    if variable == "tau":
        ax.set_xscale("log")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, bbox_inches="tight")


def render_validation_figure(ecdf: EmpiricalCdf, curve: CdfCurve, path) -> None:
    """Overlay the Monte-Carlo ECDF on the analytic CDF curve."""
    fig, ax = _new_axes("MSE threshold", "CDF of the aggregation MSE")
    ax.plot(curve.abscissae, curve.ordinates, label=curve.label or "analytic")
    ax.step(ecdf.samples, np.arange(1, ecdf.n + 1) / ecdf.n,
            where="post", alpha=0.7, label=f"ECDF ({ecdf.n} trials)")
    ax.set_xscale("log")
    ax.set_ylim(-0.02, 1.02)
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, bbox_inches="tight")
