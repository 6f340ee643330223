from .anova import AnovaResult, GroupSample, LeveneResult, levene_test, oneway_anova
from .distributions import (
    studentized_range_cdf,
    studentized_range_quantile,
    studentized_range_sf,
    tail_prob,
)
from .posthoc import (
    AUTO,
    DUNNETT_C,
    TUKEY,
    PairwiseComparison,
    PosthocResult,
    dunnett_c,
    select_posthoc,
    tukey_kramer,
)
from .rank import CorrelationResult, KruskalResult, average_ranks, kruskal_wallis, spearman_rho

__all__ = [
    "AUTO",
    "AnovaResult",
    "CorrelationResult",
    "DUNNETT_C",
    "GroupSample",
    "KruskalResult",
    "LeveneResult",
    "PairwiseComparison",
    "PosthocResult",
    "TUKEY",
    "average_ranks",
    "dunnett_c",
    "kruskal_wallis",
    "levene_test",
    "oneway_anova",
    "select_posthoc",
    "spearman_rho",
    "studentized_range_cdf",
    "studentized_range_quantile",
    "studentized_range_sf",
    "tail_prob",
    "tukey_kramer",
]
