"""Group samples, Levene's test and one-way ANOVA."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..errors import DegenerateVariance, FracciteError, NoVariation
from .distributions import tail_prob


@dataclass(frozen=True)
class GroupSample:
    label: str
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise FracciteError(f"group {self.label!r} is empty")
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    @property
    def variance(self) -> float:
        """Unbiased variance (divisor n - 1); NaN for a single observation."""
        if self.n < 2:
            return math.nan
        return float(self.values.var(ddof=1))


def as_groups(data: Mapping[str, Iterable[float]] | Sequence[GroupSample]) -> list[GroupSample]:
    """Accept either GroupSample objects or a label -> values mapping."""
    if isinstance(data, Mapping):
        return [GroupSample(str(label), v if isinstance(v, np.ndarray) else np.asarray(list(v)))
                for label, v in data.items()]
    groups = list(data)
    labels = [g.label for g in groups]
    if len(set(labels)) != len(labels):
        raise FracciteError(f"duplicate group labels in {labels}")
    return groups


@dataclass(frozen=True)
class LeveneResult:
    statistic: float
    df: tuple[int, int]
    p_value: float
    center: str = "mean"


@dataclass(frozen=True)
class AnovaResult:
    k: int
    n_total: int
    f_statistic: float
    df_between: int
    df_within: int
    ss_between: float
    ss_within: float
    mse: float
    p_value: float


def levene_test(groups, center: str = "mean") -> LeveneResult:
    """Levene's test for equal variances.

    ``center="median"`` gives the Brown-Forsythe variant.
    """
    groups = as_groups(groups)
    k = len(groups)
    if k < 2:
        raise FracciteError("Levene's test needs at least two groups")
    for g in groups:
        if g.n < 2:
            raise FracciteError(f"Levene's test needs n >= 2 in every group; {g.label!r} has {g.n}")
    if center not in ("mean", "median"):
        raise FracciteError(f"unknown Levene center {center!r}")

    centre = np.mean if center == "mean" else np.median
    z = [np.abs(g.values - centre(g.values)) for g in groups]
    n = np.array([g.n for g in groups], dtype=float)
    big_n = int(n.sum())
    z_means = np.array([zi.mean() for zi in z])
    z_grand = float(np.concatenate(z).mean())
    between = float(np.sum(n * (z_means - z_grand) ** 2))
    within = float(sum(np.sum((zi - zm) ** 2) for zi, zm in zip(z, z_means)))
    if within == 0.0:
        raise DegenerateVariance(
            "absolute deviations are constant within every group; Levene's W is undefined"
        )
    w = (big_n - k) / (k - 1) * between / within
    return LeveneResult(w, (k - 1, big_n - k), tail_prob("fisher_f", w, k - 1, big_n - k), center)


def oneway_anova(groups) -> AnovaResult:
    groups = as_groups(groups)
    k = len(groups)
    big_n = sum(g.n for g in groups)
    if k < 2:
        raise FracciteError("ANOVA needs at least two groups")
    if big_n <= k:
        raise FracciteError(f"ANOVA needs N > k (N={big_n}, k={k})")

    grand = float(np.concatenate([g.values for g in groups]).mean())
    ss_between = float(sum(g.n * (g.mean - grand) ** 2 for g in groups))
    ss_within = float(sum(np.sum((g.values - g.mean) ** 2) for g in groups))
    df_b, df_w = k - 1, big_n - k
    mse = ss_within / df_w
    if ss_within == 0.0:
        if ss_between == 0.0:
            raise NoVariation("all observations are identical")
        f, p = math.inf, 0.0
    else:
        f = (ss_between / df_b) / mse
        p = tail_prob("fisher_f", f, df_b, df_w)
    return AnovaResult(k, big_n, f, df_b, df_w, ss_between, ss_within, mse, p)
