"""Correlated Rayleigh port gains and fluid-antenna port selection.

Copula uniforms become unit-mean exponential power gains through the inverse
transform g = -ln(1 - u); each user then activates the port with the largest
instantaneous gain.  Geometry (port positions along the aperture) is carried
for reporting only: the dependence parameter, not the spacing, drives the
statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .copula import DependenceParam, sample_gumbel_copula
from .exceptions import EmptyInputError, ParameterError


@dataclass(frozen=True)
class PortLayout:
    """Evenly spaced port positions along a linear aperture of W wavelengths."""

    positions: np.ndarray
    aperture_wavelengths: float
    wavelength: float

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        if pos.size == 0:
            raise ParameterError("layout needs at least one port position")
        if np.any(np.diff(pos) < 0.0) or pos[0] != 0.0:
            raise ParameterError("positions must be nondecreasing and start at 0")
        object.__setattr__(self, "positions", pos)

    @property
    def n_ports(self) -> int:
        return int(self.positions.size)


class PortSelection(NamedTuple):
    """Selected port index and its gain; ties go to the smallest index."""

    index: int
    gain: float


def port_positions(n_ports: int, aperture_wavelengths: float, wavelength: float) -> PortLayout:
    """Positions d_n = (n-1)/(N-1) * W * lambda of N ports on the aperture."""
    if n_ports < 1:
        raise ParameterError("need at least one port")
    if aperture_wavelengths < 0.0:
        raise ParameterError("aperture must be nonnegative")
    if wavelength <= 0.0:
        raise ParameterError("wavelength must be positive")
    if n_ports == 1:
        positions = np.zeros(1)
    else:
        span = aperture_wavelengths * wavelength
        positions = np.arange(n_ports) / (n_ports - 1) * span
    return PortLayout(
        positions=positions,
        aperture_wavelengths=float(aperture_wavelengths),
        wavelength=float(wavelength),
    )


def gains_from_copula(u) -> np.ndarray:
    """Exponential quantile transform g = -ln(1 - u) of copula uniforms.

    Marginally Exp(1) per port; the dependence structure of ``u`` carries
    over unchanged.
    """
    u_arr = np.asarray(u, dtype=float)
    if u_arr.size == 0:
        raise EmptyInputError("no copula uniforms given")
    if np.any(~np.isfinite(u_arr)) or np.any(u_arr <= 0.0) or np.any(u_arr >= 1.0):
        raise ParameterError("copula uniforms must lie strictly inside (0, 1)")
    return -np.log1p(-u_arr)


def select_port(gains) -> PortSelection:
    """Pick the maximum power gain; the smallest index wins a tie."""
    g = np.asarray(gains, dtype=float)
    if g.size == 0:
        raise EmptyInputError("no port gains given")
    if np.any(~np.isfinite(g)) or np.any(g < 0.0):
        raise ParameterError("port gains must be finite and nonnegative")
    idx = int(np.argmax(g))
    return PortSelection(index=idx, gain=float(g[idx]))


def sample_effective_gain(
    n_ports: int,
    dep: DependenceParam,
    rng: np.random.Generator,
    size: int | None = None,
):
    """Draw the post-selection gain max_n g_n under the Gumbel-coupled model.

    Returns a float for ``size=None`` or an array of ``size`` independent
    draws.  The distribution matches analytics.effective_gain_cdf.
    """
    u = sample_gumbel_copula(n_ports, dep, rng, size=1 if size is None else size)
    g_best = gains_from_copula(u).max(axis=-1)
    return float(g_best[0]) if size is None else g_best
