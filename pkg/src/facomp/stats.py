"""Validation statistics: one-sample KS distance and Kendall rank correlation.

The KS machinery quantifies closeness of Monte-Carlo ECDFs to the analytic
CDFs; the Kendall estimator backs the tau = 1 - 1/theta calibration check.
Both are rank-based and assume continuous (tie-free) data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyInputError, ParameterError, TiesError
from .montecarlo import EmpiricalCdf


@dataclass(frozen=True)
class KsResult:
    """KS statistic against its critical value; passed <=> statistic <= threshold."""

    statistic: float
    n_samples: int
    threshold: float
    passed: bool


def ks_statistic(ecdf: EmpiricalCdf, analytic) -> float:
    """Two-sided one-sample KS distance sup |ECDF - analytic|.

    The supremum over a step function is attained at a sample point from
    above or below, so the ECDF is evaluated both at and just before each
    sample.
    """
    x = ecdf.samples
    n = ecdf.n
    f = np.asarray(analytic(x), dtype=float)
    if f.shape != x.shape or np.any(~np.isfinite(f)) or np.any(f < 0.0) or np.any(f > 1.0):
        raise ParameterError("analytic CDF must map the samples into [0, 1]")
    upper = np.arange(1, n + 1) / n
    lower = np.arange(0, n) / n
    return float(max(np.abs(upper - f).max(), np.abs(lower - f).max()))


def ks_threshold(n_samples: int, significance: float = 0.05) -> float:
    """Asymptotic KS critical value c(significance) / sqrt(n).

    c(a) = sqrt(-ln(a/2) / 2), giving the familiar 1.358 at 5% and 1.628
    at 1%.  Small-sample exact tables are out of scope; intended for
    n >= 1000.
    """
    if n_samples < 1:
        raise ParameterError("need at least one sample")
    if not (0.0 < significance < 1.0):
        raise ParameterError("significance must lie strictly in (0, 1)")
    return math.sqrt(-math.log(significance / 2.0) / 2.0) / math.sqrt(n_samples)


def ks_test(ecdf: EmpiricalCdf, analytic, significance: float = 0.05) -> KsResult:
    """Bundle ks_statistic with its threshold into a pass/fail result."""
    stat = ks_statistic(ecdf, analytic)
    thr = ks_threshold(ecdf.n, significance)
    return KsResult(statistic=stat, n_samples=ecdf.n, threshold=thr, passed=stat <= thr)


def _paired(pairs) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(pairs, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParameterError("pairs must be an (n, 2) array")
    if arr.shape[0] < 2:
        raise EmptyInputError("need at least two pairs")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("pairs must be finite")
    x, y = arr[:, 0], arr[:, 1]
    if np.unique(x).size != x.size or np.unique(y).size != y.size:
        raise TiesError("tied values; Kendall tau here requires continuous inputs")
    return x, y


def _merge_count_inversions(a: np.ndarray) -> tuple[np.ndarray, int]:
    """Sorted copy of ``a`` and its inversion count, by recursive merging."""
    n = a.size
    if n <= 1:
        return a, 0
    mid = n // 2
    left, c_left = _merge_count_inversions(a[:mid])
    right, c_right = _merge_count_inversions(a[mid:])
    # each right element is inverted with every larger element of the left half
    placements = np.searchsorted(left, right)
    cross = int(np.sum(left.size - placements))
    return np.sort(np.concatenate((left, right)), kind="mergesort"), c_left + c_right + cross


def kendall_tau_estimate(pairs) -> float:
    """Kendall's tau (concordant - discordant) / (n(n-1)/2), no ties allowed.

    Sorting by the first coordinate turns discordant pairs into inversions of
    the second coordinate, counted in O(n log n) by merge counting.  The
    quadratic kendall_tau_naive is the cross-check reference.
    """
    x, y = _paired(pairs)
    n = x.size
    y_by_x = y[np.argsort(x)]
    _, discordant = _merge_count_inversions(y_by_x)
    total = n * (n - 1) // 2
    return (total - 2 * discordant) / total


def kendall_tau_naive(pairs) -> float:
    """Quadratic reference Kendall tau; agrees exactly with the fast estimator.

    Intended for modest n (a few thousand) where the O(n^2) comparison table
    is still cheap.
    """
    x, y = _paired(pairs)
    n = x.size
    sx = np.sign(x[:, None] - x[None, :])
    sy = np.sign(y[:, None] - y[None, :])
    upper = np.triu_indices(n, k=1)
    concordant_minus_discordant = int(np.sum(sx[upper] * sy[upper]))
    return concordant_minus_discordant / (n * (n - 1) // 2)
