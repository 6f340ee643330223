"""Unit registry: which address strings identify which research unit."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from ..errors import RegistryError

REGISTRY_COLUMNS = ("unit_id", "display_name", "faculty_fte", "address_patterns")


@dataclass(frozen=True)
class Unit:
    unit_id: str
    display_name: str
    address_patterns: tuple[str, ...]
    faculty_fte: float

    def __post_init__(self):
        if not self.unit_id:
            raise RegistryError("empty unit_id")
        if not (self.faculty_fte > 0 and math.isfinite(self.faculty_fte)):
            raise RegistryError(f"unit {self.unit_id}: faculty_fte must be positive, got {self.faculty_fte}")
        if not any(p.strip() for p in self.address_patterns):
            raise RegistryError(f"unit {self.unit_id}: at least one address pattern is required")


class UnitRegistry:
    """Ordered collection of units keyed by ``unit_id``."""

    def __init__(self, units: Iterable[Unit]):
        self._units: dict[str, Unit] = {}
        for u in units:
            if u.unit_id in self._units:
                raise RegistryError(f"duplicate unit_id {u.unit_id!r}")
            self._units[u.unit_id] = u
        self._patterns = [
            (u.unit_id, tuple(p.strip().casefold() for p in u.address_patterns if p.strip()))
            for u in self._units.values()
        ]

    def __iter__(self) -> Iterator[Unit]:
        return iter(self._units.values())

    def __len__(self) -> int:
        return len(self._units)

    def __contains__(self, unit_id: object) -> bool:
        return unit_id in self._units

    def __getitem__(self, unit_id: str) -> Unit:
        try:
            return self._units[unit_id]
        except KeyError:
            raise RegistryError(f"unit {unit_id!r} is not in the registry") from None

    @property
    def unit_ids(self) -> list[str]:
        return list(self._units)

    def resolve(self, addresses: Iterable[str]) -> frozenset[str]:
        return resolve_units(addresses, self)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(REGISTRY_COLUMNS)
        for u in self:
            w.writerow([u.unit_id, u.display_name, repr(u.faculty_fte), ";".join(u.address_patterns)])
        return buf.getvalue()


def resolve_units(addresses: Iterable[str], registry: UnitRegistry) -> frozenset[str]:
    """Every unit with a pattern occurring (case-insensitively) in any address line."""
    lines = [a.casefold() for a in addresses]
    found = set()
    for unit_id, patterns in registry._patterns:
        if any(p in line for p in patterns for line in lines):
            found.add(unit_id)
    return frozenset(found)


def load_registry(source: str | Path | io.TextIOBase) -> UnitRegistry:
    """Read a registry table (comma- or tab-delimited, header row required)."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8-sig")
    else:
        text = source.read()
    try:
        dialect = csv.Sniffer().sniff(text.splitlines()[0], delimiters=",\t")
    except (csv.Error, IndexError):
        dialect = csv.excel
    reader = csv.DictReader(io.StringIO(text), dialect=dialect)
    missing = set(REGISTRY_COLUMNS) - set(reader.fieldnames or ())
    if missing:
        raise RegistryError(f"registry is missing column(s): {', '.join(sorted(missing))}")
    units = []
    for lineno, row in enumerate(reader, start=2):
        try:
            fte = float(row["faculty_fte"])
        except (TypeError, ValueError):
            raise RegistryError(f"registry line {lineno}: bad faculty_fte {row['faculty_fte']!r}") from None
        patterns = tuple(p.strip() for p in (row["address_patterns"] or "").split(";") if p.strip())
        units.append(Unit(row["unit_id"].strip(), (row["display_name"] or "").strip(), patterns, fte))
    return UnitRegistry(units)
