"""Reader for the two-letter tagged export format (``FN``/``PT``/.../``ER``/``EF``)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import BinaryIO, Iterable

from ..errors import FieldError, ParseError
from .records import DocKind, DocType

log = logging.getLogger(__name__)

_HEADER_TAGS = frozenset({"FN", "VR"})
_KNOWN = frozenset({"PT", "DT", "PY", "NR", "UT", "C1"})


@dataclass(frozen=True)
class WosRecord:
    id: str
    doctype: DocType
    year: int | None
    ref_count: int | None
    addresses: tuple[str, ...] = ()
    pub_type: str = ""
    extras: dict[str, tuple[str, ...]] = field(default_factory=dict, compare=False)
    offset: int = 0


def _lines(stream: BinaryIO | bytes | Iterable[bytes]):
    if isinstance(stream, (bytes, bytearray)):
        stream = bytes(stream).splitlines(keepends=True)
    offset = 0
    for raw in stream:
        yield offset, raw
        offset += len(raw)


def parse_wos_tagged(stream, errors: list | None = None) -> list[WosRecord]:
    """Parse a tagged export into one record per ``ER``-terminated block.

    Records with an unreadable ``PY``/``NR`` are skipped; the FieldError is
    appended to ``errors`` when a list is supplied and logged otherwise.
    A block cut off by end of input raises ParseError.
    """
    records: list[WosRecord] = []
    fields: dict[str, list[str]] | None = None
    tag = None
    start = 0
    for offset, raw in _lines(stream):
        line = raw.decode("utf-8", errors="replace").rstrip("\r\n")
        if offset == 0:
            line = line.lstrip("﻿")
        if not line.strip():
            continue
        if line.startswith("   "):
            if fields is None or tag is None:
                raise ParseError(f"continuation line outside a field at byte {offset}")
            fields[tag].append(line[3:].strip())
            continue
        tag, value = line[:2], line[3:].strip()
        if fields is None:
            if tag in _HEADER_TAGS:
                tag = None
                continue
            if tag == "EF":
                break
            if tag == "ER":
                raise ParseError(f"ER without a record at byte {offset}")
            fields, start = {}, offset
        if tag == "ER":
            try:
                records.append(_build(fields, start))
            except FieldError as exc:
                if errors is None:
                    log.warning("%s", exc)
                else:
                    errors.append(exc)
            fields, tag = None, None
            continue
        if tag == "EF":
            raise ParseError(f"truncated record starting at byte {start}: EF before ER")
        fields.setdefault(tag, []).append(value)
    if fields is not None:
        raise ParseError(f"truncated record starting at byte {start}: end of input before ER")
    return records


def _int_field(fields, tag, record_id) -> int | None:
    values = fields.get(tag)
    if not values:
        return None
    text = " ".join(values).strip()
    try:
        return int(text)
    except ValueError:
        raise FieldError(record_id, tag, text) from None


def _build(fields: dict[str, list[str]], offset: int) -> WosRecord:
    record_id = " ".join(fields.get("UT", [])).strip()
    if not record_id:
        raise FieldError(f"<byte {offset}>", "UT", "")
    dt = " ".join(fields.get("DT", [])).strip()
    doctype = DocType.from_label(dt) if dt else DocType(DocKind.OTHER, "")
    ref_count = _int_field(fields, "NR", record_id)
    if ref_count is not None and ref_count < 0:
        raise FieldError(record_id, "NR", str(ref_count))
    return WosRecord(
        id=record_id,
        doctype=doctype,
        year=_int_field(fields, "PY", record_id),
        ref_count=ref_count,
        addresses=tuple(fields.get("C1", ())),
        pub_type=" ".join(fields.get("PT", [])).strip(),
        extras={t: tuple(v) for t, v in fields.items() if t not in _KNOWN},
        offset=offset,
    )
