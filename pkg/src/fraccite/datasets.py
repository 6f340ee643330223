"""Published unit-level totals for seven Korean research universities.

Faculty FTE and publications (2005-2007), with integer and fractionally
counted citations received in 2009.  Used to build the bundled synthetic
corpus and as reference values in tests.
"""

from __future__ import annotations

from typing import NamedTuple


class UnitFacts(NamedTuple):
    unit_id: str
    display_name: str
    faculty: float
    p: int
    ic: int
    fc: float
    address_patterns: tuple[str, ...]


KOREAN_UNIVERSITIES: tuple[UnitFacts, ...] = (
    UnitFacts("POSTECH", "Pohang University of Science and Technology", 224, 2941, 6715, 212.90,
              ("Pohang Univ Sci & Technol", "POSTECH")),
    UnitFacts("SNU", "Seoul National University", 1733, 12814, 28709, 905.52,
              ("Seoul Natl Univ",)),
    UnitFacts("Yonsei", "Yonsei University", 1677, 6809, 13445, 439.74,
              ("Yonsei Univ",)),
    UnitFacts("Korea", "Korea University", 1246, 5911, 10682, 345.71,
              ("Korea Univ,", "Korea Univ ")),
    UnitFacts("KAIST", "Korea Advanced Institute of Science and Technology", 399, 4776, 8268, 289.01,
              ("Korea Adv Inst Sci & Technol", "KAIST")),
    UnitFacts("SKK", "Sungkyunkwan University", 1118, 5239, 9063, 301.17,
              ("Sungkyunkwan Univ",)),
    UnitFacts("Hanyang", "Hanyang University", 1131, 4350, 6718, 234.67,
              ("Hanyang Univ",)),
)

PUB_WINDOW = (2005, 2007)
CITE_WINDOW = (2009, 2009)
