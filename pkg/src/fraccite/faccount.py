"""Fractional citation counting.

Each citation a unit receives is weighted by the inverse length of the
citing paper's reference list.  Totals are kept as exact sums, so they do
not depend on the order in which citing papers are processed and partial
results from separate partitions merge without any rounding drift.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bibdata import Corpus, UnitRegistry
from .bibdata.records import CitingPaper
from .errors import RegistryError, ZeroReferenceList


@dataclass(frozen=True, slots=True)
class CitationEvent:
    citing_id: str
    cited_id: str
    unit_id: str
    weight: float


@dataclass(frozen=True)
class UnitCounts:
    unit_id: str
    ic: int
    fc: float

    @property
    def mean_weight(self) -> float | None:
        return self.fc / self.ic if self.ic else None


@dataclass(frozen=True)
class UnitDistribution:
    unit_id: str
    observations: np.ndarray  # sorted ascending

    @property
    def n(self) -> int:
        return int(self.observations.size)

    @property
    def total(self) -> float:
        return math.fsum(self.observations.tolist())

    @property
    def mean(self) -> float:
        return self.total / self.n if self.n else math.nan


def reference_weight(citing: CitingPaper) -> float:
    """Weight of one reference in ``citing``: 1 / (length of its reference list)."""
    if citing.ref_count < 1:
        raise ZeroReferenceList(f"citing paper {citing.id} has an empty reference list")
    return 1.0 / citing.ref_count


def enumerate_events(links: Iterable[tuple[str, str]], corpus: Corpus,
                     skipped: Counter | None = None,
                     include_self_citations: bool = True) -> list[CitationEvent]:
    """One event per (link, unit of the cited paper)."""
    cited = {p.id: p for p in corpus.cited}
    citing = {c.id: c for c in corpus.citing}
    events = []
    for citing_id, cited_id in links:
        c = citing[citing_id]
        try:
            w = reference_weight(c)
        except ZeroReferenceList:
            if skipped is not None:
                skipped["zero_reference_list"] += 1
            continue
        for unit in sorted(cited[cited_id].unit_ids):
            if not include_self_citations and c.unit_ids and unit in c.unit_ids:
                if skipped is not None:
                    skipped["self_citation"] += 1
                continue
            events.append(CitationEvent(citing_id, cited_id, unit, w))
    return events


def _check_unit(unit: str, registry: UnitRegistry | Iterable[str] | None) -> None:
    if registry is not None and unit not in registry:
        raise RegistryError(f"unit {unit!r} is not in the registry")


def integer_count(events: Iterable[CitationEvent], unit: str, registry=None) -> int:
    _check_unit(unit, registry)
    return sum(1 for e in events if e.unit_id == unit)


def fractional_count(events: Iterable[CitationEvent], unit: str, registry=None) -> float:
    """Correctly rounded sum of the unit's event weights."""
    _check_unit(unit, registry)
    return math.fsum(e.weight for e in events if e.unit_id == unit)


class CountAccumulator:
    """Per-unit histogram of citing reference-list lengths.

    Histograms merge by integer addition, so counting citing papers in
    separate partitions and merging gives exactly the sequential result.
    """

    def __init__(self):
        self._hist: dict[str, Counter] = defaultdict(Counter)

    def add(self, unit: str, ref_count: int, times: int = 1) -> None:
        if ref_count < 1:
            raise ZeroReferenceList(f"cannot weight a reference list of length {ref_count}")
        self._hist[unit][ref_count] += times

    def add_events(self, events: Iterable[CitationEvent]) -> "CountAccumulator":
        for e in events:
            self.add(e.unit_id, round(1.0 / e.weight))
        return self

    def merge(self, other: "CountAccumulator") -> "CountAccumulator":
        for unit, hist in other._hist.items():
            self._hist[unit].update(hist)
        return self

    def ic(self, unit: str) -> int:
        return sum(self._hist.get(unit, {}).values())

    def fc(self, unit: str) -> float:
        # exact rational sum of the float weights, rounded once
        hist = self._hist.get(unit, {})
        return float(sum((Fraction(1.0 / nr) * n for nr, n in hist.items()), Fraction(0)))

    def histogram(self, unit: str) -> dict[int, int]:
        return dict(sorted(self._hist.get(unit, {}).items()))

    def counts(self, units: Iterable[str]) -> dict[str, UnitCounts]:
        return {u: UnitCounts(u, self.ic(u), self.fc(u)) for u in units}


def count_units(events: Iterable[CitationEvent], registry: UnitRegistry | Sequence[str]) -> dict[str, UnitCounts]:
    """ic and fc for every registry unit (zero for units without events)."""
    units = registry.unit_ids if isinstance(registry, UnitRegistry) else list(registry)
    known = set(units)
    acc = CountAccumulator()
    for e in events:
        if e.unit_id not in known:
            raise RegistryError(f"event for unit {e.unit_id!r}, which is not in the registry")
        acc.add(e.unit_id, round(1.0 / e.weight))
    return acc.counts(units)


def distributions(events: Iterable[CitationEvent], units: Iterable[str] | None = None) -> dict[str, UnitDistribution]:
    """Event weights grouped by unit, sorted so results ignore input order."""
    grouped: dict[str, list[float]] = defaultdict(list)
    for e in events:
        grouped[e.unit_id].append(e.weight)
    keys = list(units) if units is not None else sorted(grouped)
    return {u: UnitDistribution(u, np.sort(np.asarray(grouped.get(u, []), dtype=float))) for u in keys}


def counts_to_csv(counts: Mapping[str, UnitCounts]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["unit_id", "ic", "fc"])
    for c in counts.values():
        w.writerow([c.unit_id, c.ic, f"{c.fc:.10g}"])
    return buf.getvalue()


def counts_from_csv(text: str) -> dict[str, UnitCounts]:
    rows = csv.DictReader(io.StringIO("".join(l for l in text.splitlines(True) if not l.startswith("#"))))
    return {r["unit_id"]: UnitCounts(r["unit_id"], int(r["ic"]), float(r["fc"])) for r in rows}
