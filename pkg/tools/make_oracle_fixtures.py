"""Record reference results for the statistical oracle suite.

Run once; the output is committed as tests/fixtures/oracle_cases.json.
Everything here uses scipy.stats only, so it stays independent of the
package's own quadrature, ranking and ANOVA code.
"""

import json
import sys
from itertools import permutations
from pathlib import Path

import numpy as np
from scipy import stats

ALPHA = 0.05
N_CASES = 50


def dunnett_c_reference(samples, alpha):
    k = len(samples)
    rows = []
    for i, j in permutations(range(k), 2):
        a, b = np.asarray(samples[i]), np.asarray(samples[j])
        va, vb = a.var(ddof=1) / a.size, b.var(ddof=1) / b.size
        qa = stats.studentized_range.ppf(1 - alpha, k, a.size - 1)
        qb = stats.studentized_range.ppf(1 - alpha, k, b.size - 1)
        half = (qa * va + qb * vb) / np.sqrt(2.0 * (va + vb))
        diff = a.mean() - b.mean()
        rows.append([i, j, diff, np.sqrt(va + vb), diff - half, diff + half])
    return rows


def tukey_reference(samples, alpha):
    res = stats.tukey_hsd(*samples)
    ci = res.confidence_interval(1 - alpha)
    k = len(samples)
    rows = []
    for i, j in permutations(range(k), 2):
        rows.append([i, j, float(res.statistic[i, j]), float(ci.low[i, j]),
                     float(ci.high[i, j]), float(res.pvalue[i, j])])
    return rows


def make_case(rng, idx):
    k = int(rng.integers(2, 8))
    sizes = rng.integers(3, 41, size=k)
    scales = rng.uniform(0.5, 3.0, size=k) if idx % 2 else np.ones(k)
    shifts = rng.normal(0.0, 1.0, size=k)
    samples = [shifts[g] + scales[g] * rng.normal(size=int(sizes[g])) for g in range(k)]
    if idx % 3 == 0:
        samples = [np.round(s, 1) for s in samples]
    samples = [s.tolist() for s in samples]

    lev = stats.levene(*samples, center="mean")
    f = stats.f_oneway(*samples)
    kw = stats.kruskal(*samples)
    x = np.round(rng.normal(size=int(rng.integers(5, 41))), 1)
    y = np.round(0.5 * x + rng.normal(size=x.size), 1)
    sp = stats.spearmanr(x, y)
    return {
        "samples": samples,
        "levene": [float(lev.statistic), float(lev.pvalue)],
        "anova": [float(f.statistic), float(f.pvalue)],
        "kruskal": [float(kw.statistic), float(kw.pvalue)],
        "spearman": {"x": x.tolist(), "y": y.tolist(),
                     "rho": float(sp.statistic), "p": float(sp.pvalue)},
        "tukey": tukey_reference(samples, ALPHA),
        "dunnett_c": [[float(v) for v in r] for r in dunnett_c_reference(samples, ALPHA)],
    }


def main(out):
    rng = np.random.default_rng(20100415)
    cases = [make_case(rng, i) for i in range(N_CASES)]
    payload = {"alpha": ALPHA, "generator": "scipy.stats (tools/make_oracle_fixtures.py)",
               "cases": cases}
    Path(out).write_text(json.dumps(payload, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/fixtures/oracle_cases.json")
