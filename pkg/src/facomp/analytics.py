"""Closed-form distribution of the aggregation MSE and its building blocks.

Under zero-forcing aggregation the MSE of one realization is
sigma^2 / (p_max * min_k g_k), so its distribution follows from the CDF of
each user's post-selection gain.  With N Gumbel-coupled Exp(1) ports the
effective gain has CDF

    F_g(x) = (1 - e^(-x))^(N^(1/theta)),

the N identical radial terms of the copula collapsing into the exponent
N^(1/theta).  theta = 1 recovers the iid order-statistics power N, and
theta -> infinity the single-port (fixed-antenna) law 1 - e^(-x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import PortLayout
from .copula import DependenceParam
from .exceptions import ParameterError

_MONOTONE_EPS = 1e-12


@dataclass(frozen=True)
class Scenario:
    """Full experiment description for analytics and Monte-Carlo runs.

    Powers are normalized linear quantities (p_max = 10 means a 10 dB
    transmit-power-to-noise ratio when sigma2 = 1).  ``signal_dim`` is the
    number of symbols aggregated per realization; only the signal-level
    oracle consumes it.  ``layout`` is informational metadata.
    """

    n_users: int
    n_ports: int
    dep: DependenceParam
    p_max: float
    sigma2: float
    signal_dim: int = 4
    layout: PortLayout | None = None

    def __post_init__(self):
        if int(self.n_users) < 1:
            raise ParameterError(f"n_users must be >= 1, got {self.n_users!r}")
        if int(self.n_ports) < 1:
            raise ParameterError(f"n_ports must be >= 1, got {self.n_ports!r}")
        if int(self.signal_dim) < 1:
            raise ParameterError(f"signal_dim must be >= 1, got {self.signal_dim!r}")
        if not (math.isfinite(self.p_max) and self.p_max > 0.0):
            raise ParameterError(f"p_max must be positive, got {self.p_max!r}")
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0.0):
            raise ParameterError(f"sigma2 must be positive, got {self.sigma2!r}")
        object.__setattr__(self, "n_users", int(self.n_users))
        object.__setattr__(self, "n_ports", int(self.n_ports))
        object.__setattr__(self, "signal_dim", int(self.signal_dim))
        object.__setattr__(self, "p_max", float(self.p_max))
        object.__setattr__(self, "sigma2", float(self.sigma2))


@dataclass(frozen=True)
class CdfCurve:
    """A CDF sampled on an ascending grid: ordinates in [0, 1], nondecreasing."""

    abscissae: np.ndarray = field(repr=False)
    ordinates: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        x = np.asarray(self.abscissae, dtype=float)
        y = np.asarray(self.ordinates, dtype=float)
        if x.size == 0 or x.shape != y.shape or x.ndim != 1:
            raise ParameterError("curve needs two equal-length nonempty 1-D grids")
        if np.any(np.diff(x) <= 0.0):
            raise ParameterError("abscissae must be strictly ascending")
        if np.any(y < -_MONOTONE_EPS) or np.any(y > 1.0 + _MONOTONE_EPS):
            raise ParameterError("ordinates must lie in [0, 1]")
        if np.any(np.diff(y) < -_MONOTONE_EPS):
            raise ParameterError("ordinates must be nondecreasing")
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "ordinates", y)


def _log_exp_complement(x: np.ndarray) -> np.ndarray:
    """ln(1 - e^(-x)) for x >= 0, stable for small x via expm1."""
    with np.errstate(divide="ignore"):
        return np.log(-np.expm1(-x))


def effective_gain_cdf(x, n_ports: int, dep: DependenceParam | float):
    """CDF of the post-selection gain: (1 - e^(-x))^(N^(1/theta)).

    Equals the N-fold Gumbel copula of identical exponential marginals; the
    exponent N^(1/theta) interpolates between full diversity (theta = 1,
    exponent N) and no diversity (theta -> infinity, exponent 1).
    """
    theta = dep.theta if isinstance(dep, DependenceParam) else float(dep)
    if not math.isfinite(theta) or theta < 1.0:
        raise ParameterError(f"theta must be finite and >= 1, got {theta!r}")
    if n_ports < 1:
        raise ParameterError("need at least one port")
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(x_arr)) or np.any(x_arr < 0.0):
        raise ParameterError("gain threshold must be nonnegative")
    diversity = n_ports ** (1.0 / theta)
    out = np.exp(diversity * _log_exp_complement(x_arr))
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def user_mse_cdf(threshold, scenario: Scenario):
    """CDF of one user's MSE share sigma^2 / (p_max * g_k) at ``threshold``.

    Equals 1 - F_g(sigma^2 / (p_max * threshold)); the complement is taken
    through expm1 so values close to 1 keep full precision.
    """
    t = np.asarray(threshold, dtype=float)
    if np.any(~np.isfinite(t) & ~np.isposinf(t)) or np.any(t <= 0.0):
        raise ParameterError("MSE threshold must be positive")
    x_arg = scenario.sigma2 / (scenario.p_max * t)
    diversity = scenario.n_ports ** (1.0 / scenario.dep.theta)
    out = -np.expm1(diversity * _log_exp_complement(x_arg))
    return float(out) if np.isscalar(threshold) or t.ndim == 0 else out


def mse_cdf(threshold, scenario: Scenario):
    """Closed-form CDF of the aggregation MSE: the K-fold power of user_mse_cdf.

    Independent fading across users makes the maximum of the per-user shares
    factor into the product of their CDFs.
    """
    return user_mse_cdf(threshold, scenario) ** scenario.n_users


def fpa_mse_cdf(threshold, scenario: Scenario):
    """Fixed-position-antenna baseline: exp(-K sigma^2 / (p_max * threshold)).

    This is both the N = 1 case for any theta and the comonotone
    (theta -> infinity) limit for any N.
    """
    t = np.asarray(threshold, dtype=float)
    if np.any(~np.isfinite(t) & ~np.isposinf(t)) or np.any(t <= 0.0):
        raise ParameterError("MSE threshold must be positive")
    out = np.exp(-scenario.n_users * scenario.sigma2 / (scenario.p_max * t))
    return float(out) if np.isscalar(threshold) or t.ndim == 0 else out


def mse_from_channels(effective_gains, p_max: float, sigma2: float) -> float:
    """Deterministic MSE of one realization: sigma^2 / (p_max * min_k g_k).

    The weakest user dominates because every transmitter inverts its own
    channel under a power budget set by the worst one.  A zero gain leaves
    the channel inversion undefined and is rejected rather than mapped to
    infinity.
    """
    g = np.asarray(effective_gains, dtype=float)
    if g.size == 0:
        raise ParameterError("need at least one effective gain")
    if np.any(~np.isfinite(g)) or np.any(g <= 0.0):
        raise ParameterError("effective gains must be finite and strictly positive")
    if not (math.isfinite(p_max) and p_max > 0.0 and math.isfinite(sigma2) and sigma2 > 0.0):
        raise ParameterError("p_max and sigma2 must be positive")
    return sigma2 / (p_max * float(g.min()))


def mse_cdf_curve(thresholds, scenario: Scenario, label: str = "analytic") -> CdfCurve:
    """Evaluate mse_cdf on an ascending threshold grid as a CdfCurve."""
    t = np.asarray(thresholds, dtype=float)
    return CdfCurve(abscissae=t, ordinates=mse_cdf(t, scenario), label=label)


def fpa_mse_cdf_curve(thresholds, scenario: Scenario, label: str = "fpa") -> CdfCurve:
    """Evaluate fpa_mse_cdf on an ascending threshold grid as a CdfCurve."""
    t = np.asarray(thresholds, dtype=float)
    return CdfCurve(abscissae=t, ordinates=fpa_mse_cdf(t, scenario), label=label)
