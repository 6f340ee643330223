"""Pairwise post-hoc comparisons after a one-way ANOVA.

Tukey-Kramer uses the pooled mean square error and is the default when
variances are homogeneous.  Dunnett's C uses each group's own variance and
a variance-weighted studentized range critical value per pair; it is chosen
when Levene's test rejects homogeneity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from ..errors import FracciteError
from .anova import AnovaResult, GroupSample, LeveneResult, as_groups, levene_test, oneway_anova
from .distributions import LARGE_DF, studentized_range_quantile, studentized_range_sf

TUKEY = "tukey"
DUNNETT_C = "dunnett_c"
AUTO = "auto"
METHODS = (AUTO, TUKEY, DUNNETT_C)


@dataclass(frozen=True)
class PairwiseComparison:
    unit_i: str
    unit_j: str
    mean_diff: float
    std_error: float
    ci_low: float
    ci_high: float
    significant: bool
    alpha: float
    p_value: float | None = None

    @property
    def half_width(self) -> float:
        return 0.5 * (self.ci_high - self.ci_low)


@dataclass(frozen=True)
class PosthocResult:
    method: str
    alpha: float
    comparisons: tuple[PairwiseComparison, ...]
    labels: tuple[str, ...]
    anova: AnovaResult | None = None
    levene: LeveneResult | None = None

    def get(self, i: str, j: str) -> PairwiseComparison:
        for c in self.comparisons:
            if c.unit_i == i and c.unit_j == j:
                return c
        raise KeyError((i, j))

    def unordered(self) -> list[PairwiseComparison]:
        """One comparison per unordered pair, in label order."""
        pos = {label: idx for idx, label in enumerate(self.labels)}
        return [c for c in self.comparisons if pos[c.unit_i] < pos[c.unit_j]]


def _df(df: float) -> float:
    return math.inf if df > LARGE_DF else float(df)


def _comparison(gi, gj, se, half, alpha, p_value=None) -> PairwiseComparison:
    diff = gi.mean - gj.mean
    low, high = diff - half, diff + half
    return PairwiseComparison(
        gi.label, gj.label, diff, se, low, high, not (low <= 0.0 <= high), alpha, p_value
    )


def tukey_kramer(groups, alpha: float = 0.05, anova: AnovaResult | None = None) -> list[PairwiseComparison]:
    """All ordered pairwise comparisons with Tukey-Kramer intervals."""
    groups = as_groups(groups)
    _check_alpha(alpha)
    anova = anova or oneway_anova(groups)
    k = len(groups)
    df = _df(anova.df_within)
    q = studentized_range_quantile(1.0 - alpha, k, df)
    out = []
    for gi, gj in permutations(groups, 2):
        se = math.sqrt(anova.mse * (1.0 / gi.n + 1.0 / gj.n))
        diff = gi.mean - gj.mean
        if se > 0:
            p = studentized_range_sf(abs(diff) / se * math.sqrt(2.0), k, df)
        else:
            p = 0.0 if diff != 0 else 1.0
        out.append(_comparison(gi, gj, se, q / math.sqrt(2.0) * se, alpha, p))
    return out


def dunnett_c(groups, alpha: float = 0.05) -> list[PairwiseComparison]:
    """All ordered pairwise comparisons with Dunnett's C intervals."""
    groups = as_groups(groups)
    _check_alpha(alpha)
    k = len(groups)
    for g in groups:
        if g.n < 2:
            raise FracciteError(f"Dunnett's C needs n >= 2 in every group; {g.label!r} has {g.n}")
    v = {g.label: g.variance / g.n for g in groups}
    q = {g.label: studentized_range_quantile(1.0 - alpha, k, _df(g.n - 1)) for g in groups}
    out = []
    for gi, gj in permutations(groups, 2):
        vi, vj = v[gi.label], v[gj.label]
        total = vi + vj
        if total == 0.0:
            half = 0.0
        else:
            crit = (q[gi.label] * vi + q[gj.label] * vj) / total
            half = math.sqrt(total / 2.0) * crit
        out.append(_comparison(gi, gj, math.sqrt(total), half, alpha))
    return out


def select_posthoc(groups, alpha: float = 0.05, method: str = AUTO,
                   levene_center: str = "mean") -> PosthocResult:
    """Run Levene, then Dunnett's C if variances differ at ``alpha``, else Tukey.

    ``method`` forces one procedure; Levene is still reported when it can be
    computed.
    """
    groups = as_groups(groups)
    if method not in METHODS:
        raise FracciteError(f"unknown post-hoc method {method!r}; choose from {METHODS}")
    _check_alpha(alpha)
    anova = oneway_anova(groups)
    levene = levene_test(groups, center=levene_center) if method == AUTO else _try_levene(groups, levene_center)
    if method == AUTO:
        method = DUNNETT_C if levene.p_value < alpha else TUKEY
    if method == TUKEY:
        comps = tukey_kramer(groups, alpha, anova)
    else:
        comps = dunnett_c(groups, alpha)
    return PosthocResult(method, alpha, tuple(comps), tuple(g.label for g in groups), anova, levene)


def _try_levene(groups: list[GroupSample], center: str) -> LeveneResult | None:
    try:
        return levene_test(groups, center=center)
    except FracciteError:
        return None


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise FracciteError(f"alpha must lie in (0, 1), got {alpha}")
