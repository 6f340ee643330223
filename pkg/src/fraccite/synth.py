"""Deterministic synthetic corpora.

``unit_targets_corpus`` builds a corpus whose citable publications, integer
citation counts and fractional citation counts hit given per-unit totals
(fc to within 0.001), which lets the published unit-level tables be
reproduced end to end without the raw citation data.  ``random_corpus``
produces large corpora for load testing.

Only ``random.Random.random`` and the pure-Python variates built on it are
used, so output is stable across platforms and numpy versions.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Sequence

from .bibdata import CitedPaper, CitingPaper, DocKind, DocType, Unit, UnitRegistry
from .datasets import CITE_WINDOW, KOREAN_UNIVERSITIES, PUB_WINDOW, UnitFacts

_CITABLE = (
    (DocType(DocKind.ARTICLE), 0.86),
    (DocType(DocKind.PROCEEDINGS_PAPER), 0.07),
    (DocType(DocKind.REVIEW), 0.04),
    (DocType(DocKind.LETTER), 0.03),
)
_NOISE_TYPES = (DocType(DocKind.OTHER, "Editorial Material"), DocType(DocKind.OTHER, "Meeting Abstract"),
                DocType(DocKind.OTHER, "Correction"))


@dataclass
class SyntheticCorpus:
    registry: UnitRegistry
    cited: list[CitedPaper]
    citing: list[CitingPaper]


def _pick(rng: random.Random, weighted):
    x = rng.random()
    for item, w in weighted:
        x -= w
        if x < 0:
            return item
    return weighted[-1][0]


def _draw_ref_counts(rng: random.Random, n: int, mean_weight: float, spread: float) -> list[int]:
    # lognormal NR with E[1/NR] close to mean_weight
    mu = -math.log(mean_weight) + spread * spread / 2.0
    return [max(1, min(2000, round(rng.lognormvariate(mu, spread)))) for _ in range(n)]


def _fit_total(rng: random.Random, nrs: list[int], target: float, tol: float) -> None:
    """Nudge reference-list lengths until sum(1/NR) is within ``tol`` of target."""
    total = math.fsum(1.0 / v for v in nrs)
    for _ in range(100 * len(nrs) + 10000):
        gap = target - total
        if abs(gap) <= tol:
            break
        i = int(rng.random() * len(nrs))
        old = nrs[i]
        want = 1.0 / old + gap
        new = round(1.0 / want) if want > 0 else 2 * old
        # bounded steps keep the shape of the distribution
        new = max(1, (old + 1) // 2, min(2000, 2 * old, new))
        if new == old:
            new = old - 1 if gap > 0 else old + 1
        if new < 1 or new > 2000:
            continue
        delta = 1.0 / new - 1.0 / old
        if abs(gap - delta) < abs(gap):
            nrs[i] = new
            total += delta
    else:
        raise RuntimeError("could not reach the fractional-count target")
    nrs.sort()


def unit_targets_corpus(facts: Sequence[UnitFacts] = KOREAN_UNIVERSITIES, seed: int = 2009,
                        spread: float = 0.8, pub_window=PUB_WINDOW, cite_window=CITE_WINDOW,
                        noise: bool = True) -> SyntheticCorpus:
    """Corpus reproducing each unit's p, ic and fc.

    With ``noise`` the corpus also carries records that the pipeline must
    discard: non-citable document types, publications outside the window,
    citing papers from the wrong year, references outside the harvested set
    and citing papers with an empty reference list.
    """
    rng = random.Random(seed)
    registry = UnitRegistry(Unit(f.unit_id, f.display_name, f.address_patterns, float(f.faculty))
                            for f in facts)
    years = list(range(pub_window[0], pub_window[1] + 1))
    cite_year = cite_window[1]
    cited: list[CitedPaper] = []
    citing: list[CitingPaper] = []
    serial = 0

    for f in facts:
        ids = [f"{f.unit_id}:{i:06d}" for i in range(f.p)]
        for pid in ids:
            cited.append(CitedPaper(pid, years[int(rng.random() * len(years))], _pick(rng, _CITABLE),
                                    frozenset({f.unit_id})))
        if noise:
            for j in range(max(1, f.p // 50)):
                pid = f"{f.unit_id}:x{j:05d}"
                if j % 2:
                    cited.append(CitedPaper(pid, years[0], _NOISE_TYPES[j % 3], frozenset({f.unit_id})))
                else:
                    cited.append(CitedPaper(pid, pub_window[1] + 1, DocType(DocKind.ARTICLE),
                                            frozenset({f.unit_id})))

        nrs = _draw_ref_counts(rng, f.ic, f.fc / f.ic, spread)
        _fit_total(rng, nrs, f.fc, 0.001)

        # group events with equal NR into citing papers citing 1-3 distinct papers
        i = 0
        while i < len(nrs):
            nr = nrs[i]
            j = i
            while j < len(nrs) and nrs[j] == nr:
                j += 1
            k = i
            while k < j:
                m = min(j - k, nr, 1 + int(rng.random() * 3))
                chosen: set[str] = set()
                while len(chosen) < m:
                    # skewed: a few papers collect many citations
                    chosen.add(ids[int(rng.random() ** 2 * len(ids))])
                refs = sorted(chosen)
                if noise and nr > len(refs) and rng.random() < 0.2:
                    refs.append(f"EXT:{serial:07d}")
                serial += 1
                citing.append(CitingPaper(f"C{serial:07d}", cite_year, nr, tuple(refs)))
                k += m
            i = j

    if noise:
        sample = [p.id for p in cited if p.doctype.citable][:: max(1, len(cited) // 200)]
        for pid in sample:
            serial += 1
            citing.append(CitingPaper(f"C{serial:07d}", cite_year - 1, 25, (pid,)))
            serial += 1
            citing.append(CitingPaper(f"C{serial:07d}", cite_year, 0, (pid,)))

    return SyntheticCorpus(registry, cited, citing)


def random_corpus(n_citing: int = 100_000, n_cited: int = 50_000, n_units: int = 12,
                  seed: int = 7, pub_window=PUB_WINDOW, cite_window=CITE_WINDOW) -> SyntheticCorpus:
    """Large random corpus for load tests; some papers are co-affiliated."""
    rng = random.Random(seed)
    units = [Unit(f"U{u:02d}", f"Unit {u}", (f"Unit {u} Univ",), 100.0 + 50 * u) for u in range(n_units)]
    registry = UnitRegistry(units)
    years = list(range(pub_window[0], pub_window[1] + 1))
    cited = []
    for i in range(n_cited):
        first = int(rng.random() * n_units)
        affil = {units[first].unit_id}
        if rng.random() < 0.1:
            affil.add(units[int(rng.random() * n_units)].unit_id)
        cited.append(CitedPaper(f"P{i:07d}", years[int(rng.random() * len(years))],
                                _pick(rng, _CITABLE), frozenset(affil)))
    citing = []
    for c in range(n_citing):
        nr = max(1, round(rng.lognormvariate(3.4, 0.6)))
        m = min(nr, 1 + int(rng.random() * 4))
        refs = sorted({f"P{int(rng.random() ** 2 * n_cited):07d}" for _ in range(m)})
        citing.append(CitingPaper(f"C{c:07d}", cite_window[1], nr, tuple(refs)))
    return SyntheticCorpus(registry, cited, citing)
