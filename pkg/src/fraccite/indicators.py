"""Size, impact and productivity indicators per unit, with rankings."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, fields
from decimal import ROUND_HALF_UP, Decimal
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .bibdata import UnitRegistry
from .errors import ConstantInput, FracciteError
from .faccount import UnitCounts
from .stats.rank import CorrelationResult, average_ranks, spearman_rho


@dataclass(frozen=True)
class IndicatorRow:
    unit_id: str
    faculty: float
    p: int
    ic: int
    fc: float
    ic_per_p: float
    fc_per_p_x100: float
    ic_per_fac: float
    fc_per_fac_x100: float
    p_per_fac: float
    mean_ref_len: float | None


# printed decimals, mirroring the published tables
DISPLAY_DECIMALS = {
    "faculty": 0,
    "p": 0,
    "ic": 0,
    "fc": 2,
    "ic_per_p": 2,
    "fc_per_p_x100": 2,
    "ic_per_fac": 2,
    "fc_per_fac_x100": 2,
    "p_per_fac": 2,
    "mean_ref_len": 1,
}
NUMERIC_COLUMNS = tuple(DISPLAY_DECIMALS)
COLUMN_LABELS = {
    "faculty": "fac",
    "p": "p",
    "ic": "ic",
    "fc": "fc",
    "ic_per_p": "ic/p",
    "fc_per_p_x100": "100*(fc/p)",
    "ic_per_fac": "ic/fac",
    "fc_per_fac_x100": "100*fc/fac",
    "p_per_fac": "p/fac",
    "mean_ref_len": "ic/fc",
}


def round_half_up(x: float, decimals: int) -> float:
    """Round the shortest decimal repr of ``x`` half-up, like printed tables do."""
    q = Decimal(1).scaleb(-decimals)
    return float(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


def fmt(x: float | None, decimals: int) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    q = Decimal(1).scaleb(-decimals)
    return str(Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_UP))


class IndicatorTable:
    def __init__(self, rows: Sequence[IndicatorRow]):
        self.rows = list(rows)
        self._by_id = {r.unit_id: r for r in self.rows}

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, unit_id: str) -> IndicatorRow:
        return self._by_id[unit_id]

    @property
    def unit_ids(self) -> list[str]:
        return [r.unit_id for r in self.rows]

    def column(self, key: str, decimals: int | None = None) -> np.ndarray:
        """Values of one column; ``decimals`` rounds them as printed."""
        if key not in NUMERIC_COLUMNS:
            raise FracciteError(f"unknown indicator {key!r}; valid keys: {', '.join(NUMERIC_COLUMNS)}")
        vals = [getattr(r, key) for r in self.rows]
        vals = [math.nan if v is None else float(v) for v in vals]
        if decimals is not None:
            vals = [v if math.isnan(v) else round_half_up(v, decimals) for v in vals]
        return np.array(vals, dtype=float)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        names = [f.name for f in fields(IndicatorRow)]
        w.writerow(names)
        for r in self.rows:
            d = asdict(r)
            w.writerow([d["unit_id"]] + [_csv_value(d[n]) for n in names[1:]])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "IndicatorTable":
        body = "".join(line for line in text.splitlines(True) if not line.startswith("#"))
        rows = []
        for d in csv.DictReader(io.StringIO(body)):
            rows.append(IndicatorRow(
                unit_id=d["unit_id"], faculty=float(d["faculty"]), p=int(d["p"]), ic=int(d["ic"]),
                fc=float(d["fc"]), ic_per_p=float(d["ic_per_p"]), fc_per_p_x100=float(d["fc_per_p_x100"]),
                ic_per_fac=float(d["ic_per_fac"]), fc_per_fac_x100=float(d["fc_per_fac_x100"]),
                p_per_fac=float(d["p_per_fac"]),
                mean_ref_len=float(d["mean_ref_len"]) if d["mean_ref_len"] else None,
            ))
        return cls(rows)

    def to_markdown(self) -> str:
        header = ["University", "fac", "p", "ic (a)", "fc (b)", "ic/p (c)", "100*(fc/p) (d)",
                  "ic/fac (e)", "100*fc/fac (f)", "p/fac (g)", "ic/fc"]
        keys = ["faculty", "p", "ic", "fc", "ic_per_p", "fc_per_p_x100", "ic_per_fac",
                "fc_per_fac_x100", "p_per_fac", "mean_ref_len"]
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        for r in self.rows:
            cells = [r.unit_id] + [fmt(getattr(r, k), DISPLAY_DECIMALS[k]) for k in keys]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def compute_indicator_table(counts: Mapping[str, UnitCounts], publications: Mapping[str, int],
                            registry: UnitRegistry) -> IndicatorTable:
    rows = []
    for unit in registry:
        u = unit.unit_id
        if u not in publications:
            raise FracciteError(f"no publication count for unit {u!r}")
        p = int(publications[u])
        if p < 0:
            raise FracciteError(f"negative publication count for unit {u!r}")
        c = counts.get(u, UnitCounts(u, 0, 0.0))
        fac = unit.faculty_fte
        rows.append(IndicatorRow(
            unit_id=u,
            faculty=fac,
            p=p,
            ic=c.ic,
            fc=c.fc,
            ic_per_p=c.ic / p if p else 0.0,
            fc_per_p_x100=100.0 * c.fc / p if p else 0.0,
            ic_per_fac=c.ic / fac,
            fc_per_fac_x100=100.0 * c.fc / fac,
            p_per_fac=p / fac,
            mean_ref_len=c.ic / c.fc if c.fc > 0 else None,
        ))
    return IndicatorTable(rows)


@dataclass(frozen=True)
class Ranking:
    key: str
    order: tuple[str, ...]
    display_ranks: dict[str, int]
    fractional_ranks: dict[str, float]


def rank_units(table: IndicatorTable, key: str, direction: str = "desc",
               decimals: int | None = None) -> Ranking:
    """Rank units by one indicator (largest first unless ``direction="asc"``).

    Display ranks use competition ranking (1, 2, 2, 4); fractional ranks
    average over ties (1, 2.5, 2.5, 4) and are what correlations use.
    """
    if direction not in ("desc", "asc"):
        raise FracciteError(f"direction must be 'desc' or 'asc', got {direction!r}")
    values = table.column(key, decimals)
    ids = table.unit_ids
    signed = -values if direction == "desc" else values
    frac = average_ranks(signed)
    order = sorted(range(len(ids)), key=lambda i: (signed[i], ids[i]))
    display = {}
    for i in range(len(ids)):
        display[ids[i]] = 1 + int(np.sum(signed < signed[i]))
    return Ranking(key, tuple(ids[i] for i in order), display,
                   {ids[i]: float(frac[i]) for i in range(len(ids))})


# variables of the rank-correlation matrix, in published order
CORRELATION_ROWS = ("faculty", "p", "ic", "fc", "ic_per_p", "fc_per_p_x100")
CORRELATION_COLS = ("p", "ic", "fc", "ic_per_p", "fc_per_p_x100", "ic_per_fac")


def correlation_matrix(table: IndicatorTable, rounded: bool = True,
                       rows: Sequence[str] = CORRELATION_ROWS,
                       cols: Sequence[str] = CORRELATION_COLS) -> dict[tuple[str, str], CorrelationResult | None]:
    """Spearman correlations for the upper triangle of ``rows`` x ``cols``.

    With ``rounded`` the values are first rounded to their printed
    precision, so ties visible in the printed table are ties here too.
    """
    order = list(dict.fromkeys(list(rows) + list(cols)))
    data = {k: table.column(k, DISPLAY_DECIMALS[k] if rounded else None) for k in order}
    out = {}
    for a, b in combinations(order, 2):
        if a not in rows or b not in cols:
            continue
        try:
            out[(a, b)] = spearman_rho(data[a], data[b])
        except ConstantInput:
            out[(a, b)] = None
    return out


def correlations_to_csv(matrix: Mapping[tuple[str, str], CorrelationResult | None],
                        rows: Sequence[str] = CORRELATION_ROWS,
                        cols: Sequence[str] = CORRELATION_COLS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(cols))
    for a in rows:
        cells = [a]
        for b in cols:
            res = matrix.get((a, b), "")
            cells.append("" if res == "" else ("NA" if res is None else f"{_rho3(res.rho)}{res.stars}"))
        w.writerow(cells)
    return buf.getvalue()


def _rho3(rho: float) -> str:
    return f"{round(rho, 3) + 0.0:.3f}"


def format_rho(res: CorrelationResult | None) -> str:
    if res is None:
        return "n/a"
    text = _rho3(res.rho)
    if text.startswith("0."):
        text = text[1:]
    elif text.startswith("-0."):
        text = "-" + text[2:]
    return text + (f"({res.stars})" if res.stars else "")
