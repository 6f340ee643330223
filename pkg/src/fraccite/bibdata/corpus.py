"""Corpus assembly: citable-item filtering, affiliation resolution, linking."""

from __future__ import annotations

import csv
import io
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TypeVar

from ..errors import FracciteError, ParseError
from .records import CitedPaper, CitingPaper, YearRange
from .registry import UnitRegistry, resolve_units
from .wos import WosRecord

log = logging.getLogger(__name__)

R = TypeVar("R")


@dataclass
class Corpus:
    cited: list[CitedPaper]
    citing: list[CitingPaper]
    registry: UnitRegistry
    pub_window: YearRange
    cite_window: YearRange
    tally: Counter = field(default_factory=Counter, compare=False)

    def __post_init__(self):
        registered = set(self.registry.unit_ids)
        for p in self.cited:
            unknown = p.unit_ids - registered
            if unknown:
                raise FracciteError(
                    f"cited paper {p.id} references unit(s) not in the registry: {sorted(unknown)}"
                )

    def publications(self) -> dict[str, int]:
        """Integer publication count per registry unit."""
        counts = dict.fromkeys(self.registry.unit_ids, 0)
        for p in self.cited:
            for u in p.unit_ids:
                counts[u] += 1
        return counts


def filter_citable(records: Iterable[R], window: YearRange, removed: Counter | None = None) -> list[R]:
    """Keep articles, letters, proceedings papers and reviews published in ``window``.

    Removal reasons are tallied into ``removed`` (``not_citable``,
    ``out_of_window``, ``no_year``).
    """
    kept = []
    for r in records:
        if not r.doctype.citable:
            reason = "not_citable"
        elif r.year is None:
            reason = "no_year"
        elif r.year not in window:
            reason = "out_of_window"
        else:
            kept.append(r)
            continue
        if removed is not None:
            removed[reason] += 1
    return kept


def build_citation_links(corpus: Corpus, dropped: Counter | None = None) -> list[tuple[str, str]]:
    """Unique (citing_id, cited_id) pairs within the cited set and citation window."""
    known = {p.id for p in corpus.cited}
    links = []
    for c in corpus.citing:
        if c.year not in corpus.cite_window:
            if dropped is not None:
                dropped["citing_out_of_window"] += 1
            continue
        seen = set()
        for pid in c.cited_ids:
            if pid in seen:
                continue
            seen.add(pid)
            if pid in known:
                links.append((c.id, pid))
            elif dropped is not None:
                dropped["dangling_reference"] += 1
    if dropped is not None and dropped["dangling_reference"]:
        log.warning("%d reference(s) point outside the harvested cited set", dropped["dangling_reference"])
    return links


def cited_from_wos(records: Sequence[WosRecord], registry: UnitRegistry, window: YearRange,
                   tally: Counter | None = None) -> list[CitedPaper]:
    """Citable, in-window tagged records with at least one resolved unit."""
    tally = tally if tally is not None else Counter()
    out = []
    for r in filter_citable(records, window, tally):
        units = resolve_units(r.addresses, registry)
        if not units:
            tally["unaffiliated"] += 1
            continue
        out.append(CitedPaper(r.id, r.year, r.doctype, units))
    return out


def citing_from_wos(records: Sequence[WosRecord], links: dict[str, list[str]],
                    registry: UnitRegistry | None = None, tally: Counter | None = None) -> list[CitingPaper]:
    """Citing papers from tagged records; references come from a link table."""
    out = []
    for r in records:
        if r.year is None:
            if tally is not None:
                tally["citing_no_year"] += 1
            continue
        if r.ref_count is None:
            raise ParseError(f"citing record {r.id} has no NR field")
        units = resolve_units(r.addresses, registry) if registry is not None else None
        out.append(CitingPaper(r.id, r.year, r.ref_count, tuple(links.get(r.id, ())), r.doctype, units))
    return out


def read_link_table(source: str | Path | io.TextIOBase) -> dict[str, list[str]]:
    """Read ``citing_id,cited_id`` rows into citing id -> cited ids."""
    text = Path(source).read_text("utf-8-sig") if isinstance(source, (str, Path)) else source.read()
    reader = csv.DictReader(io.StringIO(text))
    if not reader.fieldnames or not {"citing_id", "cited_id"} <= set(reader.fieldnames):
        raise ParseError("link table needs columns citing_id, cited_id")
    links: dict[str, list[str]] = defaultdict(list)
    for row in reader:
        links[row["citing_id"].strip()].append(row["cited_id"].strip())
    return dict(links)
