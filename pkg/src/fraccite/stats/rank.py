"""Rank-based procedures: average ranks, Kruskal-Wallis, Spearman's rho."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConstantInput, FracciteError
from .anova import as_groups
from .distributions import tail_prob


def average_ranks(values) -> np.ndarray:
    """1-based ranks, ties receiving the mean of the positions they span."""
    x = np.asarray(values, dtype=float).ravel()
    n = x.size
    if n == 0:
        return np.empty(0)
    order = np.argsort(x, kind="mergesort")
    xs = x[order]
    starts = np.flatnonzero(np.r_[True, xs[1:] != xs[:-1]])
    ends = np.r_[starts[1:], n]
    avg = 0.5 * (starts + ends - 1) + 1.0
    ranks = np.empty(n)
    ranks[order] = np.repeat(avg, ends - starts)
    return ranks


def tie_sizes(values) -> np.ndarray:
    x = np.sort(np.asarray(values, dtype=float).ravel())
    if x.size == 0:
        return np.empty(0, dtype=np.int64)
    starts = np.flatnonzero(np.r_[True, x[1:] != x[:-1]])
    return np.diff(np.r_[starts, x.size])


@dataclass(frozen=True)
class KruskalResult:
    statistic: float
    df: int
    p_value: float


@dataclass(frozen=True)
class CorrelationResult:
    rho: float
    n: int
    p_value: float

    @property
    def stars(self) -> str:
        if self.p_value < 0.01:
            return "**"
        if self.p_value < 0.05:
            return "*"
        return ""


def kruskal_wallis(groups) -> KruskalResult:
    """Kruskal-Wallis H with the usual correction for ties."""
    groups = as_groups(groups)
    k = len(groups)
    pooled = np.concatenate([g.values for g in groups])
    big_n = pooled.size
    if k < 2:
        raise FracciteError("Kruskal-Wallis needs at least two groups")
    if big_n < k + 1:
        raise FracciteError(f"Kruskal-Wallis needs N >= k + 1 (N={big_n}, k={k})")

    ranks = average_ranks(pooled)
    bounds = np.cumsum([0] + [g.n for g in groups])
    centre = (big_n + 1) / 2.0
    h = 0.0
    for g, lo, hi in zip(groups, bounds[:-1], bounds[1:]):
        h += g.n * (ranks[lo:hi].mean() - centre) ** 2
    h *= 12.0 / (big_n * (big_n + 1.0))
    t = tie_sizes(pooled).astype(float)
    correction = 1.0 - float(np.sum(t**3 - t)) / (float(big_n) ** 3 - big_n)
    if correction <= 0.0:
        return KruskalResult(0.0, k - 1, 1.0)
    h = float(h / correction)
    return KruskalResult(h, k - 1, tail_prob("chi_square", h, k - 1))


def spearman_rho(x, y) -> CorrelationResult:
    """Spearman's rank correlation with a two-tailed t-approximation p-value."""
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise FracciteError(f"length mismatch: {x.size} vs {y.size}")
    n = x.size
    if n < 3:
        raise FracciteError(f"Spearman's rho needs n >= 3, got {n}")
    rx = average_ranks(x) - (n + 1) / 2.0
    ry = average_ranks(y) - (n + 1) / 2.0
    sxx, syy = float(rx @ rx), float(ry @ ry)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantInput("rank correlation is undefined for a constant sequence")
    rho = float(rx @ ry) / math.sqrt(sxx * syy)
    rho = max(-1.0, min(1.0, rho))
    if abs(rho) >= 1.0 - 1e-15:
        rho = math.copysign(1.0, rho)
        return CorrelationResult(rho, n, 0.0)
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return CorrelationResult(rho, n, tail_prob("student_t", t, n - 2, tail="two"))
