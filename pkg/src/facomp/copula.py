"""Gumbel copula: evaluation, Kendall-tau calibration, and frailty sampling.

The Gumbel family is parameterized by a dependence parameter theta >= 1.
theta = 1 is the independence copula, and theta -> infinity converges to the
Frechet-Hoeffding upper bound min(u_1, ..., u_d) (comonotone coordinates).
Dependent uniforms are drawn with the Marshall-Olkin frailty construction: a
shared positive alpha-stable variate V with alpha = 1/theta, plus independent
unit exponentials E_n, yields u_n = exp(-(E_n / V)^alpha) with Uniform(0,1)
marginals and Gumbel joint law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ParameterError

# theta at or above this value is treated as the comonotone (single shared
# uniform) limit when sampling; direct frailty draws overflow long before it.
COMONOTONE_THETA = 1e8

# Open-interval clamp bounds: one ulp away from 0 and 1.
_U_LO = np.nextafter(0.0, 1.0)
_U_HI = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class DependenceParam:
    """Gumbel dependence parameter theta >= 1 with derived alpha = 1/theta."""

    theta: float

    def __post_init__(self):
        theta = float(self.theta)
        if not math.isfinite(theta) or theta < 1.0:
            raise ParameterError(f"theta must be finite and >= 1, got {self.theta!r}")
        object.__setattr__(self, "theta", theta)

    @property
    def alpha(self) -> float:
        return 1.0 / self.theta

    @property
    def is_independent(self) -> bool:
        return self.theta == 1.0

    @property
    def is_comonotone(self) -> bool:
        return self.theta >= COMONOTONE_THETA

    @classmethod
    def from_kendall_tau(cls, tau: float) -> "DependenceParam":
        return theta_from_kendall_tau(tau)


@dataclass(frozen=True)
class FrailtyDraw:
    """One shared frailty v > 0 and the per-port exponentials e_n > 0."""

    v: float
    e: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.asarray(self.e, dtype=float)
        if not (self.v > 0.0):
            raise ParameterError(f"frailty must be positive, got {self.v!r}")
        if e.size == 0 or not np.all(e > 0.0):
            raise ParameterError("exponential draws must be positive and nonempty")
        object.__setattr__(self, "e", e)


def _as_theta(dep: DependenceParam | float) -> float:
    theta = dep.theta if isinstance(dep, DependenceParam) else float(dep)
    if not math.isfinite(theta) or theta < 1.0:
        raise ParameterError(f"theta must be finite and >= 1, got {theta!r}")
    return theta


def gumbel_generator(t, dep: DependenceParam | float):
    """Archimedean generator (-ln t)^theta, defined on t in (0, 1].

    Vanishes at t = 1 and is strictly decreasing in t.
    """
    theta = _as_theta(dep)
    t_arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t_arr)) or np.any(t_arr <= 0.0) or np.any(t_arr > 1.0):
        raise ParameterError("generator argument must lie in (0, 1]")
    out = (-np.log(t_arr)) ** theta
    return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out


def gumbel_cdf(u, dep: DependenceParam | float):
    """Gumbel copula C(u) = exp(-(sum_n (-ln u_n)^theta)^(1/theta)).

    ``u`` is one point in the closed unit hypercube (last axis indexes the
    coordinates); leading axes are evaluated in batch.  Any zero coordinate
    annihilates the value; a coordinate equal to 1 drops out of the sum.

    The radial sum is accumulated in log space (a log-sum-exp over
    theta * ln(-ln u_n)) so large theta neither overflows (-ln u)^theta nor
    loses the max coordinate, and the comonotone limit min(u) is reached
    smoothly.
    """
    theta = _as_theta(dep)
    u_arr = np.asarray(u, dtype=float)
    if u_arr.ndim == 0 or u_arr.shape[-1] < 1:
        raise ParameterError("copula argument must have at least one coordinate")
    if np.any(~np.isfinite(u_arr)) or np.any(u_arr < 0.0) or np.any(u_arr > 1.0):
        raise ParameterError("copula coordinates must lie in [0, 1]")

    scalar_in = u_arr.ndim == 1
    pts = np.atleast_2d(u_arr)

    with np.errstate(divide="ignore"):
        # log(-log u): finite on (0,1), -inf at u=1 (term drops), +inf at u=0
        log_s = np.log(-np.log(pts))
    log_terms = theta * log_s
    peak = np.max(log_terms, axis=-1)

    out = np.empty(pts.shape[:-1], dtype=float)
    annihilated = np.isposinf(peak)  # some coordinate is exactly 0
    all_ones = np.isneginf(peak)  # every coordinate is exactly 1
    out[annihilated] = 0.0
    out[all_ones] = 1.0

    interior = ~(annihilated | all_ones)
    if np.any(interior):
        lt = log_terms[interior]
        pk = peak[interior]
        log_radial = (pk + np.log(np.sum(np.exp(lt - pk[..., None]), axis=-1))) / theta
        out[interior] = np.exp(-np.exp(log_radial))

    return float(out[0]) if scalar_in else out.reshape(u_arr.shape[:-1])


def kendall_tau_from_theta(dep: DependenceParam | float) -> float:
    """Kendall's tau of the Gumbel copula: tau = 1 - 1/theta."""
    return 1.0 - 1.0 / _as_theta(dep)


def theta_from_kendall_tau(tau: float) -> DependenceParam:
    """Calibrate theta = 1/(1 - tau) from a Kendall's tau in [0, 1)."""
    tau = float(tau)
    if not math.isfinite(tau) or tau < 0.0 or tau >= 1.0:
        raise ParameterError(f"Kendall tau must lie in [0, 1), got {tau!r}")
    return DependenceParam(theta=1.0 / (1.0 - tau))


def _log_positive_stable(alpha: float, rng: np.random.Generator, size) -> np.ndarray:
    """ln V for V standard positive alpha-stable, via the Kanter construction.

    With U ~ Uniform(0,1) and E ~ Exp(1),
        V = sin(alpha pi U) / sin(pi U)^(1/alpha)
            * (sin((1-alpha) pi U) / E)^((1-alpha)/alpha)
    is exactly distributed with Laplace transform E[exp(-q V)] = exp(-q^alpha).
    Returned in log scale so heavy-tailed draws for small alpha stay
    representable.
    """
    angle = np.pi * np.clip(rng.random(size), _U_LO, _U_HI)
    exp_draw = np.maximum(rng.standard_exponential(size), _U_LO)
    return (
        np.log(np.sin(alpha * angle))
        - np.log(np.sin(angle)) / alpha
        + (1.0 - alpha) / alpha * (np.log(np.sin((1.0 - alpha) * angle)) - np.log(exp_draw))
    )


def sample_positive_stable(alpha: float, rng: np.random.Generator, size=None):
    """Draw standard positive alpha-stable variates, alpha strictly in (0, 1).

    The Laplace transform of the output is exp(-q^alpha); moments of order
    >= alpha are infinite.  alpha = 1 (the degenerate point mass at 1) is the
    caller's short-circuit, not handled here.
    """
    alpha = float(alpha)
    if not (0.0 < alpha < 1.0):
        raise ParameterError(f"stable index alpha must lie strictly in (0, 1), got {alpha!r}")
    log_v = _log_positive_stable(alpha, rng, size)
    out = np.exp(log_v)
    return float(out) if size is None else out


def draw_frailty(n_ports: int, dep: DependenceParam, rng: np.random.Generator) -> FrailtyDraw:
    """One shared frailty and the per-port exponentials for a single user.

    For theta = 1 the frailty is the degenerate point mass at 1.  At or above
    the comonotone cutoff no finite frailty represents the limit; use the
    copula sampler, which short-circuits to a shared uniform.
    """
    if n_ports < 1:
        raise ParameterError("need at least one port")
    if dep.is_comonotone:
        raise ParameterError(
            f"theta = {dep.theta!r} is in the comonotone regime; no finite frailty exists"
        )
    v = 1.0 if dep.is_independent else sample_positive_stable(dep.alpha, rng)
    e = np.maximum(rng.standard_exponential(n_ports), _U_LO)
    return FrailtyDraw(v=v, e=e)


def sample_gumbel_copula(
    n_ports: int,
    dep: DependenceParam,
    rng: np.random.Generator,
    size: int | None = None,
    comonotone_cutoff: float = COMONOTONE_THETA,
):
    """Draw Gumbel-dependent uniforms with Uniform(0,1) marginals.

    Returns shape (n_ports,) for ``size=None`` or (size, n_ports) otherwise;
    rows are independent draws.  theta = 1 short-circuits to independent
    uniforms and theta >= ``comonotone_cutoff`` to one shared uniform per row
    (the Frechet-Hoeffding limit), avoiding the singular endpoints of the
    frailty construction.  All outputs are clamped one ulp inside (0, 1) so
    downstream logarithms stay finite.
    """
    if n_ports < 1:
        raise ParameterError("need at least one port")
    rows = 1 if size is None else int(size)
    if rows < 1:
        raise ParameterError("size must be a positive count")

    if dep.is_independent:
        u = rng.random((rows, n_ports))
    elif dep.theta >= comonotone_cutoff:
        u = np.broadcast_to(rng.random((rows, 1)), (rows, n_ports)).copy()
    else:
        alpha = dep.alpha
        log_v = _log_positive_stable(alpha, rng, rows)
        e = np.maximum(rng.standard_exponential((rows, n_ports)), _U_LO)
        # u_n = exp(-(E_n / V)^alpha), evaluated through logs so huge frailty
        # values (large theta) never overflow.
        u = np.exp(-np.exp(alpha * (np.log(e) - log_v[:, None])))

    u = np.clip(u, _U_LO, _U_HI)
    return u[0] if size is None else u
