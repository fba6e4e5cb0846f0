"""Reproducible Monte-Carlo MSE trials and a signal-level consistency oracle.

Determinism contract: a (scenario, master_seed, n_trials) triple reproduces
the exact same sample vector bit for bit, regardless of how many workers run
the trials.  Trials are partitioned into fixed-size chunks; chunk i draws
from a counter-based Philox stream keyed by SeedSequence(master_seed,
spawn_key=(0, i)), and chunks are concatenated in index order.  Parallelism
therefore changes wall-clock time only, never the samples.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytics import Scenario
from .copula import sample_gumbel_copula
from .exceptions import EmptyInputError, ParameterError, TrialCapError

TRIAL_CHUNK = 4096
DEFAULT_TRIAL_CAP = 10_000_000

# Spawn-key channels under one master seed: trial chunks use (0, i); callers
# needing auxiliary streams (calibration draws, oracle channels) use distinct
# leading indices so no stream is ever shared.
_TRIAL_STREAM = 0


def derived_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Counter-based Philox generator for one named substream of master_seed."""
    seq = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class TrialBatch:
    """Positive MSE samples plus the inputs that reproduce them exactly."""

    mse_samples: np.ndarray = field(repr=False)
    scenario: Scenario
    master_seed: int
    n_trials: int

    def __post_init__(self):
        samples = np.asarray(self.mse_samples, dtype=float)
        if samples.ndim != 1 or samples.size != self.n_trials:
            raise ParameterError("sample vector length must equal n_trials")
        if not np.all(np.isfinite(samples)) or np.any(samples <= 0.0):
            raise ParameterError("MSE samples must be finite and strictly positive")
        object.__setattr__(self, "mse_samples", samples)


class EmpiricalCdf:
    """Right-continuous step CDF of a sample: 0 below the minimum, 1 at the max."""

    def __init__(self, samples):
        samples = np.asarray(samples, dtype=float)
        if samples.size == 0:
            raise EmptyInputError("cannot build an ECDF from zero samples")
        if not np.all(np.isfinite(samples)):
            raise ParameterError("ECDF samples must be finite")
        self._sorted = np.sort(samples)

    @property
    def samples(self) -> np.ndarray:
        """The samples in ascending order (do not mutate)."""
        return self._sorted

    @property
    def n(self) -> int:
        return int(self._sorted.size)

    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        out = np.searchsorted(self._sorted, x_arr, side="right") / self.n
        return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def empirical_cdf(batch: TrialBatch) -> EmpiricalCdf:
    """ECDF over a trial batch's MSE samples."""
    return EmpiricalCdf(batch.mse_samples)


def _simulate_chunk(scenario: Scenario, n: int, master_seed: int, chunk_index: int) -> np.ndarray:
    rng = derived_rng(master_seed, _TRIAL_STREAM, chunk_index)
    k, n_ports = scenario.n_users, scenario.n_ports
    u = sample_gumbel_copula(n_ports, scenario.dep, rng, size=n * k).reshape(n, k, n_ports)
    gains = -np.log1p(-u)
    effective = gains.max(axis=2)
    return scenario.sigma2 / (scenario.p_max * effective.min(axis=1))


def run_mse_trials(
    scenario: Scenario,
    n_trials: int,
    master_seed: int,
    n_jobs: int = 1,
    trial_cap: int = DEFAULT_TRIAL_CAP,
) -> TrialBatch:
    """Draw ``n_trials`` independent aggregation-MSE realizations.

    Each trial samples every user's correlated port gains (one independent
    frailty per user), selects the best port per user, and evaluates the
    weakest-user MSE.  ``n_jobs`` > 1 runs chunks in a thread pool; results
    are identical to the serial run by the determinism contract.
    """
    if n_trials < 1:
        raise ParameterError("need at least one trial")
    if n_trials > trial_cap:
        raise TrialCapError(f"{n_trials} trials exceed the cap of {trial_cap}")
    if master_seed < 0:
        raise ParameterError("master seed must be a nonnegative integer")

    spans = [
        (i, min(TRIAL_CHUNK, n_trials - start))
        for i, start in enumerate(range(0, n_trials, TRIAL_CHUNK))
    ]
    if n_jobs > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            chunks = list(
                pool.map(lambda s: _simulate_chunk(scenario, s[1], master_seed, s[0]), spans)
            )
    else:
        chunks = [_simulate_chunk(scenario, n, master_seed, i) for i, n in spans]

    samples = np.concatenate(chunks) if len(chunks) > 1 else chunks[0]
    return TrialBatch(
        mse_samples=samples, scenario=scenario, master_seed=int(master_seed), n_trials=n_trials
    )


def _channel_powers(channel_draw: np.ndarray) -> np.ndarray:
    h = np.asarray(channel_draw)
    if h.size == 0:
        raise EmptyInputError("no channels given")
    powers = h.real**2 + h.imag**2
    if np.any(~np.isfinite(powers)) or np.any(powers <= 0.0):
        raise ParameterError("channel powers must be finite and nonzero")
    return powers


def zf_misalignment(channel_draw) -> np.ndarray:
    """Per-user residual |1 - p_k h_k / sqrt(rho)|^2 under zero-forcing scaling.

    With p_k = sqrt(rho) h_k^H / |h_k|^2 the common sqrt(rho) cancels and
    p_k h_k reduces to h_k^H h_k / |h_k|^2, the channel power over itself.
    Evaluated in that cancelled form the residual is exactly zero in floating
    point; multiplying the factors out instead would leave ~1e-32 of rounding
    residue and mask the identity.
    """
    h = np.asarray(channel_draw)
    powers = _channel_powers(h)
    aligned = powers / powers
    return np.abs(1.0 - aligned) ** 2


def power_constraint_check(scenario: Scenario, channel_draw, rho: float) -> bool:
    """True iff |p_k|^2 = rho / |h_k|^2 stays within p_max for every user.

    Holds with equality for the weakest user at the operating point
    rho = p_max * min_k |h_k|^2.
    """
    if not (math.isfinite(rho) and rho > 0.0):
        raise ParameterError("rho must be positive")
    powers = _channel_powers(channel_draw)
    return bool(np.all(rho <= scenario.p_max * powers))


def signal_level_oracle(
    scenario: Scenario,
    channel_draw,
    n_symbol_draws: int,
    rng: np.random.Generator,
    _block: int = 8192,
) -> float:
    """Empirical aggregation MSE from simulating the transmit-receive chain.

    For fixed complex effective channels, draws unit-variance circularly
    symmetric Gaussian symbol vectors and AWGN, applies the zero-forcing
    scaling with rho = p_max * min_k |h_k|^2, and averages the per-symbol
    squared aggregation error.  Converges to
    mse_from_channels(|h|^2, p_max, sigma2) as draws grow, independent of the
    signal dimension; raises if the zero-forcing alignment identity fails.
    """
    if n_symbol_draws < 1:
        raise ParameterError("need at least one symbol draw")
    h = np.asarray(channel_draw, dtype=complex)
    powers = _channel_powers(h)
    if h.ndim != 1 or h.size != scenario.n_users:
        raise ParameterError("channel draw must hold one complex channel per user")

    rho = scenario.p_max * float(powers.min())
    sqrt_rho = math.sqrt(rho)
    coeff = sqrt_rho * np.conj(h) / powers  # p_k
    gain_through = coeff * h / sqrt_rho  # p_k h_k / sqrt(rho), 1 up to rounding
    if np.any(np.abs(gain_through - 1.0) > 1e-12):
        raise ArithmeticError("zero-forcing scaling failed to align the users")
    r = scenario.signal_dim
    k = scenario.n_users
    noise_scale = math.sqrt(scenario.sigma2 / 2.0)

    total = 0.0
    done = 0
    while done < n_symbol_draws:
        b = min(_block, n_symbol_draws - done)
        s = (rng.standard_normal((b, k, r)) + 1j * rng.standard_normal((b, k, r))) / np.sqrt(2.0)
        z = noise_scale * (rng.standard_normal((b, r)) + 1j * rng.standard_normal((b, r)))
        target = s.sum(axis=1)
        estimate = np.einsum("k,bkr->br", gain_through, s) + z / sqrt_rho
        err = target - estimate
        total += float(np.sum(err.real**2 + err.imag**2)) / r
        done += b
    return total / n_symbol_draws
