import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccite.errors import ConstantInput, DegenerateVariance, DomainError, NoVariation
from fraccite.stats import (
    DUNNETT_C,
    TUKEY,
    average_ranks,
    dunnett_c,
    kruskal_wallis,
    levene_test,
    oneway_anova,
    select_posthoc,
    spearman_rho,
    studentized_range_cdf,
    studentized_range_quantile,
    tail_prob,
    tukey_kramer,
)
from paperdata import FIXTURES, korea_table, table4_rows

ORACLE = json.loads((FIXTURES / "oracle_cases.json").read_text())


def groups_of(samples):
    return {str(i): s for i, s in enumerate(samples)}


# --- Levene / ANOVA ---------------------------------------------------------

def test_levene_identical_groups():
    r = levene_test({"a": [1, 2, 3], "b": [1, 2, 3]})
    assert r.statistic == 0.0 and r.p_value == 1.0 and r.df == (1, 4)


def test_levene_degenerate():
    with pytest.raises(DegenerateVariance):
        levene_test({"a": [0, 2], "b": [0, 4]})


def test_levene_small_example():
    # Z = |y - mean|: {1.5,.5,.5,1.5} and {2,2,2,2}; between 2, within 1
    r = levene_test({"a": [1, 2, 3, 4], "b": [1, 1, 5, 5]})
    assert r.statistic == pytest.approx(12.0, rel=1e-12)
    assert r.p_value == pytest.approx(0.0134000, abs=1e-6)


def test_anova_hand_decomposition():
    r = oneway_anova({"a": [1, 2, 3], "b": [2, 3, 4], "c": [3, 4, 5]})
    assert (r.ss_between, r.ss_within, r.f_statistic) == pytest.approx((6.0, 6.0, 3.0))
    assert (r.df_between, r.df_within) == (2, 6)


def test_anova_edge_cases():
    r = oneway_anova({"a": [1, 2, 3], "b": [1, 2, 3]})
    assert r.f_statistic == 0.0 and r.p_value == 1.0
    r = oneway_anova({"a": [1, 1], "b": [2, 2]})
    assert r.f_statistic == math.inf and r.p_value == 0.0
    with pytest.raises(NoVariation):
        oneway_anova({"a": [1, 1], "b": [1, 1]})


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=30),
       st.lists(st.floats(-1e3, 1e3), min_size=2, max_size=30))
def test_f_equals_t_squared(x, y):
    x, y = np.array(x), np.array(y)
    n1, n2 = len(x), len(y)
    sp2 = ((n1 - 1) * x.var(ddof=1) + (n2 - 1) * y.var(ddof=1)) / (n1 + n2 - 2)
    if sp2 <= 1e-9 * (1 + x.mean() ** 2 + y.mean() ** 2):
        return
    t = (x.mean() - y.mean()) / math.sqrt(sp2 * (1 / n1 + 1 / n2))
    r = oneway_anova({"x": x, "y": y})
    assert r.f_statistic == pytest.approx(t * t, rel=1e-8, abs=1e-12)
    assert r.p_value == pytest.approx(tail_prob("student_t", t, n1 + n2 - 2, tail="two"), abs=1e-10)


# --- post-hoc ---------------------------------------------------------------

def test_tukey_equal_groups_not_significant():
    comps = tukey_kramer({"a": [1, 2, 3], "b": [1, 2, 3], "c": [1, 2, 3]})
    assert len(comps) == 6
    assert all(c.mean_diff == 0 and not c.significant for c in comps)


def test_dunnett_identical_groups_not_significant():
    assert not any(c.significant for c in dunnett_c({"a": [1, 2, 4], "b": [1, 2, 4]}))


def test_dunnett_zero_variances():
    (ab, ba) = dunnett_c({"a": [1, 1, 1], "b": [2, 2, 2]})
    assert ab.half_width == 0.0 and ab.significant and ba.significant
    (ab, _) = dunnett_c({"a": [1, 1], "b": [1, 1]})
    assert not ab.significant


def test_dunnett_reduces_to_balanced_q():
    rng = np.random.default_rng(5)
    n, k = 12, 4
    base = rng.normal(size=n)
    base = (base - base.mean()) / base.std(ddof=1)
    groups = {f"g{i}": base + i for i in range(k)}  # identical variance 1
    q = studentized_range_quantile(0.95, k, n - 1)
    for c in dunnett_c(groups):
        assert c.half_width == pytest.approx(q / math.sqrt(n), rel=1e-12)


def test_antisymmetry_and_ci_contains_diff():
    rng = np.random.default_rng(11)
    groups = {f"g{i}": rng.normal(i * 0.3, 1 + i, size=8 + i) for i in range(4)}
    for fn in (tukey_kramer, dunnett_c):
        comps = {(c.unit_i, c.unit_j): c for c in fn(groups)}
        for (i, j), c in comps.items():
            m = comps[(j, i)]
            assert m.mean_diff == -c.mean_diff
            assert (m.ci_low, m.ci_high) == pytest.approx((-c.ci_high, -c.ci_low), rel=1e-12)
            assert c.ci_low <= c.mean_diff <= c.ci_high
            assert c.significant == (not c.ci_low <= 0 <= c.ci_high)


def test_widening_gap_keeps_significance():
    rng = np.random.default_rng(2)
    a, b = rng.normal(size=15), rng.normal(size=15)
    prev = None
    for shift in np.linspace(0, 3, 13):
        c = tukey_kramer({"a": a + shift, "b": b})[0]
        ratio = abs(c.mean_diff) / c.half_width
        if prev is not None and prev[1]:
            assert c.significant
        prev = (ratio, c.significant)


def test_select_posthoc_rules():
    rng = np.random.default_rng(4)
    homo = {f"g{i}": rng.normal(0, 1, size=30) for i in range(3)}
    assert select_posthoc(homo).method == TUKEY
    hetero = {"a": rng.normal(0, 1, size=50), "b": rng.normal(0, 10, size=50)}
    res = select_posthoc(hetero)
    assert res.method == DUNNETT_C and res.levene.p_value < 0.05
    assert select_posthoc(hetero, method=TUKEY).method == TUKEY


def test_tukey_half_width_ratio_in_table4():
    rows = {(r["unit_i"], r["unit_j"]): r for r in table4_rows()}
    r = rows[("SNU", "KAIST")]
    q = (float(r["ci_high"]) - float(r["mean_diff"])) / float(r["std_error"]) * math.sqrt(2)
    assert q == pytest.approx(4.1705, abs=1e-3)
    assert q == pytest.approx(studentized_range_quantile(0.95, 7), abs=5e-3)


# --- rank procedures -------------------------------------------------------

def test_kruskal_hand_example():
    r = kruskal_wallis({"a": [1, 2], "b": [3, 4], "c": [5, 6]})
    assert r.statistic == pytest.approx(32 / 7, rel=1e-12) and r.df == 2
    assert r.p_value == pytest.approx(math.exp(-16 / 7), rel=1e-10)


def test_kruskal_identical_and_label_invariance():
    assert kruskal_wallis({"a": [3, 3], "b": [3, 3]}) == kruskal_wallis({"x": [3, 3, 3], "y": [3]})
    r = kruskal_wallis({"a": [3, 3], "b": [3, 3]})
    assert (r.statistic, r.p_value) == (0.0, 1.0)
    g = {"a": [1.0, 5.5, 2.0], "b": [3.0, 3.0, 9.0], "c": [0.5, 7.0]}
    h = {"z": g["c"], "y": g["a"], "x": g["b"]}
    assert kruskal_wallis(g).statistic == pytest.approx(kruskal_wallis(h).statistic, rel=1e-14)


def test_spearman_examples():
    t = korea_table()
    assert round(spearman_rho(t.column("faculty"), t.column("p")).rho, 3) == 0.893
    r = spearman_rho(t.column("ic_per_p", 2), t.column("fc_per_p_x100", 2))
    # Pearson on average ranks with the KAIST/SKK tie
    assert r.rho == pytest.approx(0.936975, abs=1e-6) and round(r.rho, 3) == 0.937
    x = [3.0, 1.0, 4.0, 1.5, 9.0]
    assert spearman_rho(x, x).rho == 1.0 and spearman_rho(x, x).p_value == 0.0
    assert spearman_rho(x, [-v for v in x]).rho == -1.0
    with pytest.raises(ConstantInput):
        spearman_rho([1, 1, 1], [1, 2, 3])


def test_average_ranks_ties():
    assert list(average_ranks([2.28, 2.24, 1.97, 1.81, 1.73, 1.73, 1.54])) == [7, 6, 5, 4, 2.5, 2.5, 1]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-50, 50), min_size=1, max_size=10), min_size=2, max_size=5))
def test_rank_tests_invariant_under_monotone_transform(samples):
    if sum(map(len, samples)) < len(samples) + 1:
        return
    f = lambda v: math.exp(v / 10.0) * 3 + 1  # noqa: E731
    g1 = groups_of(samples)
    g2 = groups_of([[f(v) for v in s] for s in samples])
    assert kruskal_wallis(g1).statistic == pytest.approx(kruskal_wallis(g2).statistic, rel=1e-12, abs=1e-12)
    x = [v for s in samples for v in s]
    y = list(range(len(x)))[::-1]
    if len(set(x)) > 1 and len(x) >= 3:
        assert spearman_rho(x, y).rho == pytest.approx(spearman_rho([f(v) for v in x], y).rho, abs=1e-12)


# --- distributions ----------------------------------------------------------

def test_tail_prob_examples():
    assert tail_prob("student_t", 0.0, 7, tail="two") == 1.0
    assert tail_prob("chi_square", 4.5714, 2) == pytest.approx(math.exp(-4.5714 / 2), rel=1e-12)
    assert tail_prob("fisher_f", 1.0, 9, 9) == pytest.approx(0.5, abs=1e-14)
    assert tail_prob("std_normal", 1.959963984540054, tail="two") == pytest.approx(0.05, rel=1e-12)
    with pytest.raises(DomainError):
        tail_prob("student_t", 1.0, 0)
    with pytest.raises(DomainError):
        tail_prob("fisher_f", 1.0, 3)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 60), st.floats(0.5, 200), st.floats(0.5, 200))
def test_tail_prob_against_mpmath(x, d1, d2):
    mpmath.mp.dps = 40
    f = mpmath.betainc(d2 / 2, d1 / 2, 0, d2 / (d2 + d1 * mpmath.mpf(x)), regularized=True)
    assert tail_prob("fisher_f", x, d1, d2) == pytest.approx(float(f), rel=1e-10, abs=1e-300)
    c = mpmath.gammainc(d1 / 2, mpmath.mpf(x) / 2, mpmath.inf, regularized=True)
    assert tail_prob("chi_square", x, d1) == pytest.approx(float(c), rel=1e-10, abs=1e-300)
    t = mpmath.betainc(d1 / 2, 0.5, 0, d1 / (d1 + mpmath.mpf(x) ** 2), regularized=True)
    assert tail_prob("student_t", x, d1, tail="two") == pytest.approx(float(t), rel=1e-10, abs=1e-300)


def test_studentized_range_examples():
    assert studentized_range_quantile(0.95, 2) == pytest.approx(math.sqrt(2) * 1.959963984540054, abs=1e-6)
    assert studentized_range_quantile(0.95, 7) == pytest.approx(4.170, abs=0.005)
    for df in (5, 30, math.inf):
        assert studentized_range_cdf(0.0, 4, df) == 0.0
        vals = [studentized_range_cdf(q, 4, df) for q in np.linspace(0, 8, 40)]
        assert all(b >= a for a, b in zip(vals, vals[1:]))
    assert studentized_range_cdf(3.0, 5, 2e4) == studentized_range_cdf(3.0, 5, math.inf)
    with pytest.raises(DomainError):
        studentized_range_cdf(1.0, 1, 10)
    with pytest.raises(DomainError):
        studentized_range_quantile(1.0, 3, 10)
    with pytest.raises(DomainError):
        studentized_range_cdf(1.0, 3, 0.5)


def test_studentized_range_against_mpmath():
    # k = 2, df = inf: P(|Z1 - Z2| <= q) = 2 Phi(q / sqrt 2) - 1
    mpmath.mp.dps = 30
    for q in (0.3, 1.0, 2.5, 5.0):
        want = float(mpmath.erf(q / 2))
        assert studentized_range_cdf(q, 2) == pytest.approx(want, abs=1e-10)


@pytest.mark.parametrize("df", [5, 30, math.inf])
def test_quantile_cdf_round_trip(df):
    worst = 0.0
    for k in range(2, 11):
        for q in np.linspace(0.5, 8.0, 16):
            p = studentized_range_cdf(q, k, df)
            if 1e-9 < p < 1 - 1e-9:
                worst = max(worst, abs(studentized_range_quantile(p, k, df) - q))
    assert worst < 1e-4


# --- reference oracle ------------------------------------------------------

@pytest.mark.parametrize("idx", range(len(ORACLE["cases"])))
def test_oracle_case(idx):
    case = ORACLE["cases"][idx]
    alpha = ORACLE["alpha"]
    g = groups_of(case["samples"])
    lev = levene_test(g)
    assert lev.statistic == pytest.approx(case["levene"][0], rel=1e-6, abs=1e-6)
    assert lev.p_value == pytest.approx(case["levene"][1], abs=1e-4)
    an = oneway_anova(g)
    assert an.f_statistic == pytest.approx(case["anova"][0], rel=1e-6, abs=1e-6)
    assert an.p_value == pytest.approx(case["anova"][1], abs=1e-4)
    kw = kruskal_wallis(g)
    assert kw.statistic == pytest.approx(case["kruskal"][0], rel=1e-6, abs=1e-6)
    assert kw.p_value == pytest.approx(case["kruskal"][1], abs=1e-4)
    sp = spearman_rho(case["spearman"]["x"], case["spearman"]["y"])
    assert sp.rho == pytest.approx(case["spearman"]["rho"], abs=1e-6)
    assert sp.p_value == pytest.approx(case["spearman"]["p"], abs=1e-4)

    tk = {(c.unit_i, c.unit_j): c for c in tukey_kramer(g, alpha)}
    assert len(tk) == len(case["tukey"])
    for i, j, diff, lo, hi, p in case["tukey"]:
        c = tk[(str(int(i)), str(int(j)))]
        assert (c.mean_diff, c.ci_low, c.ci_high) == pytest.approx((diff, lo, hi), abs=1e-6)
        assert c.p_value == pytest.approx(p, abs=1e-4)
    dc = {(c.unit_i, c.unit_j): c for c in dunnett_c(g, alpha)}
    assert len(dc) == len(case["dunnett_c"])
    for i, j, diff, se, lo, hi in case["dunnett_c"]:
        c = dc[(str(int(i)), str(int(j)))]
        assert (c.mean_diff, c.std_error, c.ci_low, c.ci_high) == pytest.approx((diff, se, lo, hi), abs=1e-6)
