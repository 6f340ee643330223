"""Line-delimited JSON record stream, one cited or citing paper per line."""

from __future__ import annotations

import json
from typing import Iterable

from ..errors import ParseError
from .records import CitedPaper, CitingPaper, CorpusFragment, DocType

_COMMON = ("role", "id", "year", "doctype")
_ROLE_FIELDS = {"cited": ("units",), "citing": ("ref_count", "cited_ids")}


def _iter_lines(stream):
    if isinstance(stream, (bytes, bytearray)):
        stream = bytes(stream).splitlines()
    elif isinstance(stream, str):
        stream = stream.splitlines()
    for lineno, line in enumerate(stream, start=1):
        if isinstance(line, (bytes, bytearray)):
            line = line.decode("utf-8")
        if lineno == 1:
            line = line.lstrip("﻿")
        yield lineno, line


def _int(obj, key, lineno) -> int:
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"line {lineno}: field {key!r} must be an integer, got {value!r}")
    return value


def _str_list(obj, key, lineno) -> list[str]:
    value = obj[key]
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(f"line {lineno}: field {key!r} must be a list of strings")
    return value


def parse_canonical(stream) -> CorpusFragment:
    """Parse the canonical stream into cited and citing collections.

    Ids must be unique across the whole stream. Unknown fields are ignored.
    """
    frag = CorpusFragment()
    seen: dict[str, int] = {}
    for lineno, line in _iter_lines(stream):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise ParseError(f"line {lineno}: expected an object")
        for key in _COMMON:
            if key not in obj:
                raise ParseError(f"line {lineno}: missing mandatory field {key!r}")
        role = obj["role"]
        if role not in _ROLE_FIELDS:
            raise ParseError(f"line {lineno}: role must be 'cited' or 'citing', got {role!r}")
        for key in _ROLE_FIELDS[role]:
            if key not in obj:
                raise ParseError(f"line {lineno}: missing mandatory field {key!r}")

        pid = str(obj["id"])
        if pid in seen:
            raise ParseError(f"duplicate id {pid!r} on lines {seen[pid]} and {lineno}")
        seen[pid] = lineno
        year = _int(obj, "year", lineno)
        doctype = DocType.from_label(str(obj["doctype"]))

        if role == "cited":
            units = _str_list(obj, "units", lineno)
            if not units:
                raise ParseError(f"line {lineno}: field 'units' must not be empty")
            frag.cited.append(CitedPaper(pid, year, doctype, frozenset(units)))
        else:
            ref_count = _int(obj, "ref_count", lineno)
            if ref_count < 0:
                raise ParseError(f"line {lineno}: field 'ref_count' must be >= 0")
            cited_ids = tuple(_str_list(obj, "cited_ids", lineno))
            if ref_count > 0 and len(set(cited_ids)) > ref_count:
                raise ParseError(
                    f"line {lineno}: {len(set(cited_ids))} cited ids exceed ref_count {ref_count}"
                )
            units = frozenset(_str_list(obj, "units", lineno)) if "units" in obj else None
            frag.citing.append(CitingPaper(pid, year, ref_count, cited_ids, doctype, units))
    return frag


def serialize_canonical(cited: Iterable[CitedPaper] = (), citing: Iterable[CitingPaper] = ()) -> str:
    """Inverse of :func:`parse_canonical`; cited lines first, keys in fixed order."""
    out = []
    for p in cited:
        out.append(json.dumps({"role": "cited", "id": p.id, "year": p.year,
                               "doctype": str(p.doctype), "units": sorted(p.unit_ids)},
                              ensure_ascii=False))
    for c in citing:
        obj = {"role": "citing", "id": c.id, "year": c.year, "doctype": str(c.doctype),
               "ref_count": c.ref_count, "cited_ids": list(c.cited_ids)}
        if c.unit_ids is not None:
            obj["units"] = sorted(c.unit_ids)
        out.append(json.dumps(obj, ensure_ascii=False))
    return "".join(line + "\n" for line in out)
