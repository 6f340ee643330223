"""Bibliographic inputs: record types, parsers, unit registry and linking."""

from .canonical import parse_canonical, serialize_canonical
from .corpus import (
    Corpus,
    build_citation_links,
    cited_from_wos,
    citing_from_wos,
    filter_citable,
    read_link_table,
)
from .records import (
    CITABLE_KINDS,
    CitedPaper,
    CitingPaper,
    CorpusFragment,
    DocKind,
    DocType,
    YearRange,
)
from .registry import Unit, UnitRegistry, load_registry, resolve_units
from .wos import WosRecord, parse_wos_tagged

__all__ = [
    "CITABLE_KINDS",
    "CitedPaper",
    "CitingPaper",
    "Corpus",
    "CorpusFragment",
    "DocKind",
    "DocType",
    "Unit",
    "UnitRegistry",
    "WosRecord",
    "YearRange",
    "build_citation_links",
    "cited_from_wos",
    "citing_from_wos",
    "filter_citable",
    "load_registry",
    "parse_canonical",
    "parse_wos_tagged",
    "read_link_table",
    "resolve_units",
    "serialize_canonical",
]
