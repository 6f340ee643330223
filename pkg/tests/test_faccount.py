import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccite.bibdata import CitedPaper, CitingPaper, Corpus, DocKind, DocType, Unit, UnitRegistry, YearRange
from fraccite.bibdata import build_citation_links
from fraccite.errors import RegistryError, ZeroReferenceList
from fraccite.faccount import (
    CitationEvent,
    CountAccumulator,
    count_units,
    counts_from_csv,
    counts_to_csv,
    distributions,
    enumerate_events,
    fractional_count,
    integer_count,
    reference_weight,
)

ART = DocType(DocKind.ARTICLE)
UNITS = ("A", "B", "C")
REG = UnitRegistry(Unit(u, u, (u,), 1.0) for u in UNITS)


def corpus(cited, citing, registry=REG):
    return Corpus(cited, citing, registry, YearRange(2005, 2007), YearRange(2009, 2009))


def events_of(cited, citing, **kw):
    c = corpus(cited, citing)
    return enumerate_events(build_citation_links(c), c, **kw)


def test_reference_weight():
    w = lambda nr: reference_weight(CitingPaper("c", 2009, nr, ()))  # noqa: E731
    assert w(40) == 0.025
    assert w(6) == pytest.approx(1 / 6)
    assert w(1) == 1.0
    with pytest.raises(ZeroReferenceList):
        w(0)


def test_coaffiliated_link_gives_one_event_per_unit():
    ev = events_of([CitedPaper("P", 2006, ART, frozenset({"A", "B"}))], [CitingPaper("C", 2009, 10, ("P",))])
    assert sorted((e.unit_id, e.weight) for e in ev) == [("A", 0.1), ("B", 0.1)]


def test_three_papers_same_unit():
    cited = [CitedPaper(f"P{i}", 2006, ART, frozenset({"A"})) for i in range(3)]
    ev = events_of(cited, [CitingPaper("C", 2009, 30, ("P0", "P1", "P2"))])
    assert len(ev) == 3 and all(e.weight == 1 / 30 for e in ev)
    assert fractional_count(ev, "A") == pytest.approx(0.1, abs=1e-15)


def test_no_links_no_events():
    assert events_of([CitedPaper("P", 2006, ART, frozenset({"A"}))], []) == []


def test_zero_reference_citing_skipped_and_counted():
    skipped = Counter()
    ev = events_of([CitedPaper("P", 2006, ART, frozenset({"A"}))],
                   [CitingPaper("C", 2009, 0, ("P",)), CitingPaper("D", 2009, 4, ("P",))], skipped=skipped)
    assert [e.citing_id for e in ev] == ["D"] and skipped["zero_reference_list"] == 1


def test_self_citations_optional():
    cited = [CitedPaper("P", 2006, ART, frozenset({"A", "B"}))]
    citing = [CitingPaper("C", 2009, 5, ("P",), unit_ids=frozenset({"A"}))]
    assert {e.unit_id for e in events_of(cited, citing)} == {"A", "B"}
    skipped = Counter()
    kept = events_of(cited, citing, include_self_citations=False, skipped=skipped)
    assert {e.unit_id for e in kept} == {"B"} and skipped["self_citation"] == 1


def test_integer_and_fractional_examples():
    ev = [CitationEvent("c1", "p", "U", 0.025), CitationEvent("c2", "p", "U", 1 / 6)]
    assert integer_count(ev, "U") == 2
    assert fractional_count(ev, "U") == pytest.approx(0.025 + 1 / 6)
    assert integer_count([], "U") == 0 and fractional_count([], "U") == 0.0
    with pytest.raises(RegistryError):
        integer_count(ev, "Z", registry=REG)
    with pytest.raises(RegistryError):
        fractional_count(ev, "Z", registry=REG)


def test_distribution_mean():
    d = distributions([CitationEvent("c", "p", "U", 0.5), CitationEvent("d", "p", "U", 0.25)])["U"]
    assert d.n == 2 and d.mean == 0.375


def test_paper_scale_mean():
    assert 289.01 / 8268 == pytest.approx(0.034955, abs=5e-7)


def test_counts_csv_round_trip():
    counts = count_units([CitationEvent("c", "p", "A", 1 / 3)] * 3, REG)
    text = counts_to_csv(counts)
    assert text.splitlines()[0] == "unit_id,ic,fc"
    back = counts_from_csv(text)
    assert back["A"].ic == 3 and back["A"].fc == pytest.approx(1.0, rel=1e-9)
    assert back["C"].ic == 0 and back["C"].fc == 0.0


# --- property-based -------------------------------------------------------

@st.composite
def small_corpora(draw, max_cited=25, max_citing=60):
    n_cited = draw(st.integers(1, max_cited))
    cited = [CitedPaper(f"P{i}", 2006, ART, frozenset(draw(st.sets(st.sampled_from(UNITS), min_size=1))))
             for i in range(n_cited)]
    citing = []
    for j in range(draw(st.integers(0, max_citing))):
        refs = tuple(draw(st.lists(st.integers(0, n_cited + 2), max_size=6)))
        refs = tuple(f"P{r}" for r in refs)
        nr = draw(st.integers(0, 80))
        citing.append(CitingPaper(f"C{j}", draw(st.sampled_from([2008, 2009, 2009, 2009])),
                                  max(nr, len(set(refs))) if nr else 0, refs))
    return cited, citing


def naive_fc(cited, citing):
    """Brute-force per-unit fractional count straight from the records."""
    units = {p.id: p.unit_ids for p in cited}
    out = {u: [] for u in UNITS}
    for c in citing:
        if c.year != 2009 or c.ref_count == 0:
            continue
        for pid in set(c.cited_ids):
            for u in units.get(pid, ()):
                out[u].append(1.0 / c.ref_count)
    return {u: (len(v), math.fsum(v)) for u, v in out.items()}


@settings(max_examples=80, deadline=None)
@given(small_corpora())
def test_conservation_against_brute_force(c):
    cited, citing = c
    ev = events_of(cited, citing)
    assert len(ev) <= 1000
    counts = count_units(ev, REG)
    expected = naive_fc(cited, citing)
    for u in UNITS:
        assert counts[u].ic == expected[u][0]
        assert counts[u].fc == pytest.approx(expected[u][1], rel=1e-12, abs=1e-15)
        assert fractional_count(ev, u) == pytest.approx(counts[u].fc, rel=1e-12, abs=1e-15)
        d = distributions(ev, UNITS)[u]
        assert d.n == counts[u].ic
        assert abs(d.total - counts[u].fc) <= 1e-9 * max(1, counts[u].ic)
        assert counts[u].fc <= counts[u].ic and (counts[u].fc == 0) == (counts[u].ic == 0)


@settings(max_examples=60, deadline=None)
@given(small_corpora())
def test_doubling_reference_lists_halves_fc(c):
    cited, citing = c
    doubled = [CitingPaper(x.id, x.year, 2 * x.ref_count, x.cited_ids) for x in citing]
    a = count_units(events_of(cited, citing), REG)
    b = count_units(events_of(cited, doubled), REG)
    for u in UNITS:
        assert b[u].ic == a[u].ic
        assert b[u].fc == a[u].fc / 2  # halving a power of two is exact


@settings(max_examples=60, deadline=None)
@given(small_corpora(), st.randoms(use_true_random=False))
def test_permutation_invariance(c, rnd):
    cited, citing = c
    base = count_units(events_of(cited, citing), REG)
    cited2, citing2 = list(cited), list(citing)
    rnd.shuffle(cited2)
    rnd.shuffle(citing2)
    ev = events_of(cited2, citing2)
    rnd.shuffle(ev)
    assert count_units(ev, REG) == base


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(UNITS), st.integers(1, 500)), max_size=400),
       st.integers(1, 8), st.randoms(use_true_random=False))
def test_partition_merge_is_bit_identical(items, parts, rnd):
    whole = CountAccumulator()
    for u, nr in items:
        whole.add(u, nr)
    rnd.shuffle(items)
    shards = [CountAccumulator() for _ in range(parts)]
    for i, (u, nr) in enumerate(items):
        shards[i % parts].add(u, nr)
    merged = CountAccumulator()
    for s in reversed(shards):
        merged.merge(s)
    assert merged.counts(UNITS) == whole.counts(UNITS)


def test_fc_is_exact_sum_of_weights():
    rng = random.Random(3)
    nrs = [rng.randint(1, 300) for _ in range(5000)]
    acc = CountAccumulator()
    for nr in nrs:
        acc.add("A", nr)
    assert acc.fc("A") == math.fsum(1.0 / nr for nr in nrs)
