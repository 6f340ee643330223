"""Bibliographic record types."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources

from ..errors import FracciteError


class DocKind(str, Enum):
    ARTICLE = "Article"
    LETTER = "Letter"
    PROCEEDINGS_PAPER = "ProceedingsPaper"
    REVIEW = "Review"
    OTHER = "Other"


CITABLE_KINDS = frozenset({DocKind.ARTICLE, DocKind.LETTER, DocKind.PROCEEDINGS_PAPER, DocKind.REVIEW})


@lru_cache(maxsize=1)
def _label_table() -> dict[str, DocKind]:
    raw = json.loads(resources.files(__package__).joinpath("doctype_labels.json").read_text("utf-8"))
    return {k: DocKind(v) for k, v in raw.items()}


@dataclass(frozen=True)
class DocType:
    kind: DocKind
    label: str = ""

    @classmethod
    def from_label(cls, label: str) -> "DocType":
        """Normalize a document-type label; unknown labels become Other(label)."""
        text = " ".join(label.split())
        kind = _label_table().get(text.lower())
        if kind is None:
            try:
                kind = DocKind(text)
            except ValueError:
                return cls(DocKind.OTHER, text)
            if kind is DocKind.OTHER:
                return cls(DocKind.OTHER, text)
        return cls(kind, "")

    @property
    def citable(self) -> bool:
        return self.kind in CITABLE_KINDS

    def __str__(self) -> str:
        if self.kind is DocKind.OTHER:
            return self.label or "Other"
        return self.kind.value


@dataclass(frozen=True, order=True)
class YearRange:
    """Inclusive range of publication years."""

    start: int
    end: int

    def __post_init__(self):
        if self.end < self.start:
            raise FracciteError(f"empty year range {self.start}:{self.end}")

    @classmethod
    def parse(cls, text: str | int) -> "YearRange":
        """Parse ``"2005:2007"``, ``"2005-2007"`` or a single year ``"2009"``."""
        s = str(text).strip()
        for sep in (":", "-", ".."):
            if sep in s[1:]:
                a, b = s.split(sep, 1)
                return cls(int(a), int(b))
        return cls(int(s), int(s))

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.start <= year <= self.end

    def __str__(self) -> str:
        return f"{self.start}:{self.end}"


@dataclass(frozen=True)
class CitedPaper:
    id: str
    year: int
    doctype: DocType
    unit_ids: frozenset[str]


@dataclass(frozen=True)
class CitingPaper:
    id: str
    year: int
    ref_count: int
    cited_ids: tuple[str, ...]
    doctype: DocType = field(default_factory=lambda: DocType(DocKind.ARTICLE))
    # affiliations of the citing paper itself; only used to drop self-citations
    unit_ids: frozenset[str] | None = None


@dataclass
class CorpusFragment:
    cited: list[CitedPaper] = field(default_factory=list)
    citing: list[CitingPaper] = field(default_factory=list)
