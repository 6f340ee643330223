"""Markdown report assembled from the pipeline's artifact files."""

from __future__ import annotations

import csv
import io
import re
from typing import Mapping

from .bibdata import UnitRegistry
from .errors import PipelineError
from .grouping import SimilarityGraph, build_similarity_graph, maximal_cliques
from .indicators import COLUMN_LABELS, IndicatorTable, fmt
from .pipeline import header, read_comparisons, strip_comments
from .stats import PosthocResult

REQUIRED = ("counts.csv", "indicators.csv", "correlations.csv", "comparisons.csv")
METHOD_NAMES = {"tukey": "Tukey-Kramer", "dunnett_c": "Dunnett's C"}


def _p(p: float) -> str:
    return "p = 0.000" if p < 0.0005 else f"p = {p:.3f}"


def _signed(x: float, decimals: int) -> str:
    # table style drops the leading zero: -.003413690
    return re.sub(r"^(-?)0\.", r"\1.", f"{x:.{decimals}f}")


def _table(header_cells, rows) -> list[str]:
    out = ["| " + " | ".join(header_cells) + " |", "|" + "---|" * len(header_cells)]
    out += ["| " + " | ".join(r) + " |" for r in rows]
    return out


def render_report(files: Mapping[str, str], digest: str, registry: UnitRegistry | None = None) -> str:
    """Render the report; ``files`` maps artifact names to their text."""
    for name in REQUIRED:
        if name not in files:
            raise PipelineError(f"missing artifact {name}")
    names = {u.unit_id: u.display_name for u in registry} if registry is not None else {}
    table = IndicatorTable.from_csv(files["indicators.csv"])
    counts_meta = [line for line in files["counts.csv"].splitlines() if line.startswith("# tally")]
    comparisons, meta = read_comparisons(files["comparisons.csv"])

    out = [header(digest, "<!--").rstrip("\n"), "# Fractional citation impact report", ""]
    out.append(f"Units: {len(table)}. Total publications: {sum(r.p for r in table)}. "
               f"Citations: {sum(r.ic for r in table)} integer-counted, "
               f"{fmt(sum(r.fc for r in table), 2)} fractionally counted.")
    if counts_meta:
        out += ["", "Records set aside during ingestion and linking: "
                + ", ".join(t.replace("=", ": ") for t in counts_meta[0].split()[2:]) + "."]
    out.append("")

    out += ["## Size and impact", ""]
    rows = []
    for r in table:
        label = names.get(r.unit_id, r.unit_id)
        rows.append([f"{r.unit_id}" + (f" ({label})" if label != r.unit_id else ""), fmt(r.faculty, 0),
                     str(r.p), str(r.ic), fmt(r.ic_per_p, 3), fmt(r.ic_per_fac, 3)])
    out += _table(["Unit", "Faculty", "Publications", "Citations", "Citations/Publications",
                   "Citations/Faculty"], rows)
    out += ["", "## Citations by counting method", "", table.to_markdown().rstrip("\n"), ""]
    out.append("ic = integer-counted citations; fc = fractionally counted citations; "
               "p = publications; fac = FTE faculty; ic/fc = mean length of the citing reference lists.")
    out.append("")

    out += ["## Spearman rank correlations", ""]
    corr_body = strip_comments(files["correlations.csv"])
    if corr_body.strip():
        reader = list(csv.reader(io.StringIO(corr_body)))
        head = [COLUMN_LABELS.get(c, c) for c in reader[0][1:]]
        rows = []
        for line in reader[1:]:
            cells = []
            for cell in line[1:]:
                if cell and cell != "NA":
                    stars = cell.lstrip("-0123456789.")
                    num = cell[: len(cell) - len(stars)]
                    cells.append(_signed(float(num), 3) + (f"({stars})" if stars else ""))
                else:
                    cells.append(cell)
            rows.append([COLUMN_LABELS.get(line[0], line[0])] + cells)
        out += _table([""] + head, rows)
        out += ["", "** Correlation is significant at the 0.01 level (2-tailed).",
                "* Correlation is significant at the 0.05 level (2-tailed).", ""]
    else:
        out += ["Fewer than three units; rank correlations are not computed.", ""]

    out += ["## Differences in fractional citation impact", ""]
    if not comparisons:
        out += ["Fewer than two units received at least two citations, so no tests of "
                "differences between units are reported.", ""]
        return "\n".join(out)

    method = meta.get("method", "")
    alpha = float(meta.get("alpha", comparisons[0].alpha))
    out.append(f"Kruskal-Wallis: H = {float(meta['kruskal_H']):.3f}, df = {meta['kruskal_df']}, "
               f"{_p(float(meta['kruskal_p']))}.")
    if "levene_W" in meta:
        df1, df2 = meta["levene_df"].split(",")
        out.append(f"Levene (homogeneity of variance): W = {float(meta['levene_W']):.3f}, "
                   f"df = ({df1}, {df2}), {_p(float(meta['levene_p']))}.")
    df1, df2 = meta["anova_df"].split(",")
    out.append(f"One-way ANOVA: F = {float(meta['anova_F']):.3f}, df = ({df1}, {df2}), "
               f"{_p(float(meta['anova_p']))}.")
    out.append(f"Post-hoc procedure: {METHOD_NAMES.get(method, method)} at alpha = {alpha:g}.")
    if "excluded" in meta:
        out.append(f"Excluded (fewer than two citations): {meta['excluded'].replace(',', ', ')}.")
    out += ["", "### Multiple comparisons", ""]
    rows = []
    previous = None
    for c in comparisons:
        rows.append([c.unit_i if c.unit_i != previous else "", c.unit_j,
                     _signed(c.mean_diff, 9) + ("*" if c.significant else ""),
                     _signed(c.std_error, 9), _signed(c.ci_low, 8), _signed(c.ci_high, 8)])
        previous = c.unit_i
    out += _table(["(I) Unit", "(J) Unit", "Mean Difference (I-J)", "Std. Error",
                   f"{100 * (1 - alpha):g}% CI Lower", f"{100 * (1 - alpha):g}% CI Upper"], rows)
    out += ["", f"*. The mean difference is significant at the {alpha:g} level.", ""]

    nodes = [g.split(":")[0] for g in meta.get("groups", "").split(",") if g]
    graph = build_similarity_graph(PosthocResult(method, alpha, tuple(comparisons), tuple(nodes)))
    out += ["### Homogeneous groups", ""]
    out += _group_prose(graph)
    return "\n".join(out) + "\n"


def _group_prose(graph: SimilarityGraph) -> list[str]:
    lines = []
    edges = graph.sorted_edges()
    if edges:
        lines.append("Units not significantly different from each other (linked in the graph): "
                     + "; ".join(f"{a} - {b}" for a, b in edges) + ".")
    else:
        lines.append("Every pair of units differs significantly; the graph has no links.")
    comps = graph.components()
    lines += ["", f"Connected components ({len(comps)}): "
              + "; ".join("{" + ", ".join(c) + "}" for c in comps) + "."]
    groups = maximal_cliques(graph)
    lines += ["", "Homogeneous groups (maximal sets of mutually non-different units):", ""]
    for i, group in enumerate(groups, start=1):
        lines.append(f"{i}. {', '.join(group)}")
    overlap = [n for n in graph.nodes if sum(n in g for g in groups) > 1]
    if overlap:
        lines += ["", "Belonging to more than one group: " + ", ".join(overlap) + "."]
    return lines + [""]

