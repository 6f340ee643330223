"""Pipeline stages: ingest, count, indicators, compare, graph, report.

Every stage returns the text of the artifacts it produced; ``run_pipeline``
writes them into the output directory atomically (all or nothing).
"""

from __future__ import annotations

import csv
import io
import logging
import os
import shutil
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from .bibdata import (
    CitedPaper,
    Corpus,
    UnitRegistry,
    build_citation_links,
    cited_from_wos,
    citing_from_wos,
    filter_citable,
    load_registry,
    parse_canonical,
    parse_wos_tagged,
    read_link_table,
    serialize_canonical,
)
from .config import RunConfig
from .errors import FracciteError, PipelineError
from .faccount import CitationEvent, count_units, counts_to_csv, distributions, enumerate_events
from .grouping import SimilarityGraph, build_similarity_graph, export_dot, export_pajek, maximal_cliques
from .indicators import (
    IndicatorTable,
    compute_indicator_table,
    correlation_matrix,
    correlations_to_csv,
)
from .stats import GroupSample, PairwiseComparison, PosthocResult, kruskal_wallis, select_posthoc

log = logging.getLogger(__name__)

ARTIFACTS = ("counts.csv", "indicators.csv", "correlations.csv", "comparisons.csv",
             "graph.net", "graph.gv", "report.md")
COMPARISON_COLUMNS = ("unit_i", "unit_j", "mean_diff", "std_error", "ci_low", "ci_high",
                      "significant", "method", "alpha")


def header(digest: str, comment: str = "#") -> str:
    if comment == "<!--":
        return f"<!-- fraccite config sha256={digest} -->\n"
    return f"{comment} fraccite config sha256={digest}\n"


def strip_comments(text: str, comment: str = "#") -> str:
    return "".join(line for line in text.splitlines(True) if not line.startswith(comment))


def read_comments(text: str, comment: str = "#") -> dict[str, str]:
    """``key=value`` pairs from comment lines."""
    meta = {}
    for line in text.splitlines():
        if line.startswith(comment):
            for tok in line[len(comment):].split():
                if "=" in tok:
                    k, v = tok.split("=", 1)
                    meta[k] = v
    return meta


# --- ingest ---------------------------------------------------------------

def load_corpus(cfg: RunConfig) -> Corpus:
    if cfg.registry is None:
        raise PipelineError("a unit registry is required (--registry)")
    registry = load_registry(cfg.registry)
    tally: Counter = Counter()
    cited: list[CitedPaper] = []
    citing = []
    for path in cfg.inputs:
        frag = parse_canonical(Path(path).read_bytes())
        cited.extend(frag.cited)
        citing.extend(frag.citing)
    links: dict[str, list[str]] = {}
    for path in cfg.links:
        for k, v in read_link_table(path).items():
            links.setdefault(k, []).extend(v)
    for path in cfg.cited:
        with open(path, "rb") as fh:
            cited.extend(cited_from_wos(parse_wos_tagged(fh), registry, cfg.pub_window, tally))
    for path in cfg.citing:
        with open(path, "rb") as fh:
            citing.extend(citing_from_wos(parse_wos_tagged(fh), links, registry, tally))

    _check_unique([p.id for p in cited], "cited")
    _check_unique([c.id for c in citing], "citing")
    cited = filter_citable(cited, cfg.pub_window, tally)
    if not cited:
        raise PipelineError("no citable items in the publication window")
    return Corpus(cited, citing, registry, cfg.pub_window, cfg.cite_window, tally)


def _check_unique(ids: list[str], role: str) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise PipelineError(f"duplicate {role} id {i!r} across input files")
        seen.add(i)


def ingest(cfg: RunConfig) -> dict[str, str]:
    corpus = load_corpus(cfg)
    citing = [c for c in corpus.citing if c.year in corpus.cite_window]
    return {"corpus.jsonl": serialize_canonical(corpus.cited, citing)}


# --- counting -------------------------------------------------------------

@dataclass
class Analysis:
    corpus: Corpus
    events: list[CitationEvent]
    tally: Counter = field(default_factory=Counter)


def analyse(cfg: RunConfig, corpus: Corpus | None = None) -> Analysis:
    corpus = corpus or load_corpus(cfg)
    tally = Counter(corpus.tally)
    links = build_citation_links(corpus, tally)
    events = enumerate_events(links, corpus, tally, cfg.include_self_citations)
    log.info("%d links, %d events", len(links), len(events))
    return Analysis(corpus, events, tally)


def count(cfg: RunConfig, analysis: Analysis | None = None) -> dict[str, str]:
    a = analysis or analyse(cfg)
    counts = count_units(a.events, a.corpus.registry)
    tally = " ".join(f"{k}={v}" for k, v in sorted(a.tally.items()))
    text = header(cfg.digest()) + (f"# tally {tally}\n" if tally else "") + counts_to_csv(counts)
    return {"counts.csv": text}


def indicator_table(cfg: RunConfig, analysis: Analysis) -> IndicatorTable:
    counts = count_units(analysis.events, analysis.corpus.registry)
    return compute_indicator_table(counts, analysis.corpus.publications(), analysis.corpus.registry)


def indicators(cfg: RunConfig, analysis: Analysis | None = None) -> dict[str, str]:
    a = analysis or analyse(cfg)
    table = indicator_table(cfg, a)
    digest = cfg.digest()
    out = {"indicators.csv": header(digest) + table.to_csv()}
    if len(table) >= 3:
        matrix = correlation_matrix(table, rounded=cfg.rounded_correlations)
        out["correlations.csv"] = header(digest) + correlations_to_csv(matrix)
    else:
        out["correlations.csv"] = header(digest) + "# fewer than three units: no rank correlations\n"
    return out


# --- comparisons ----------------------------------------------------------

def comparison_groups(analysis: Analysis) -> tuple[list[GroupSample], list[str]]:
    """Groups with at least two events; the rest are reported as excluded."""
    dist = distributions(analysis.events, analysis.corpus.registry.unit_ids)
    groups, excluded = [], []
    for unit, d in dist.items():
        if d.n >= 2:
            groups.append(GroupSample(unit, d.observations))
        else:
            excluded.append(unit)
    return groups, excluded


def compare(cfg: RunConfig, analysis: Analysis | None = None) -> dict[str, str]:
    a = analysis or analyse(cfg)
    groups, excluded = comparison_groups(a)
    lines = [header(cfg.digest()).rstrip("\n")]
    if excluded:
        lines.append("# excluded=" + ",".join(excluded))
    lines.append("# groups=" + ",".join(f"{g.label}:{g.n}" for g in groups))
    rows: list[PairwiseComparison] = []
    if len(groups) >= 2:
        res = select_posthoc(groups, cfg.alpha, cfg.posthoc, cfg.levene_center)
        kw = kruskal_wallis(groups)
        meta = [f"method={res.method}", f"alpha={cfg.alpha!r}",
                f"anova_F={res.anova.f_statistic!r}", f"anova_df={res.anova.df_between},{res.anova.df_within}",
                f"anova_p={res.anova.p_value!r}", f"anova_mse={res.anova.mse!r}",
                f"kruskal_H={kw.statistic!r}", f"kruskal_df={kw.df}", f"kruskal_p={kw.p_value!r}"]
        if res.levene is not None:
            meta += [f"levene_W={res.levene.statistic!r}", f"levene_df={res.levene.df[0]},{res.levene.df[1]}",
                     f"levene_p={res.levene.p_value!r}"]
        lines.append("# " + " ".join(meta))
        rows = list(res.comparisons)
        method = res.method
    else:
        lines.append("# fewer than two comparable units: no comparisons")
        method = cfg.posthoc
    lines.append(f"# * The mean difference is significant at the {cfg.alpha:g} level.")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COMPARISON_COLUMNS)
    for c in rows:
        w.writerow([c.unit_i, c.unit_j, repr(c.mean_diff), repr(c.std_error), repr(c.ci_low),
                    repr(c.ci_high), "*" if c.significant else "", method, repr(c.alpha)])
    return {"comparisons.csv": "\n".join(lines) + "\n" + buf.getvalue()}


def read_comparisons(text: str) -> tuple[list[PairwiseComparison], dict[str, str]]:
    meta = read_comments(text)
    rows = []
    for d in csv.DictReader(io.StringIO(strip_comments(text))):
        rows.append(PairwiseComparison(
            d["unit_i"], d["unit_j"], float(d["mean_diff"]), float(d["std_error"]),
            float(d["ci_low"]), float(d["ci_high"]), d["significant"] == "*", float(d["alpha"])))
    return rows, meta


# --- graph ----------------------------------------------------------------

def graph(cfg: RunConfig, comparisons_text: str, nodes: list[str] | None = None) -> dict[str, str]:
    rows, meta = read_comparisons(comparisons_text)
    if nodes is None:
        nodes = [g.split(":")[0] for g in meta.get("groups", "").split(",") if g]
    if rows:
        alpha = float(meta.get("alpha", rows[0].alpha))
        res = PosthocResult(meta.get("method", ""), alpha, tuple(rows), tuple(nodes))
        g = build_similarity_graph(res)
    else:
        g = SimilarityGraph(tuple(nodes), frozenset(), cfg.alpha, meta.get("method", ""))
    digest = cfg.digest()
    out = {}
    if cfg.format in ("pajek", "both"):
        out["graph.net"] = header(digest, "%") + export_pajek(g)
    if cfg.format in ("dot", "both"):
        out["graph.gv"] = header(digest, "//") + export_dot(g, maximal_cliques(g))
    return out


# --- orchestration --------------------------------------------------------

def write_outputs(out_dir: Path, files: dict[str, str]) -> None:
    """Write all files or none: stage into a temp dir, then move into place."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=".fraccite-", dir=out_dir))
    try:
        for name, text in files.items():
            (tmp / name).write_bytes(text.encode("utf-8"))
        for name in files:
            os.replace(tmp / name, out_dir / name)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)


def run_pipeline(cfg: RunConfig) -> dict[str, str]:
    """Every stage end to end; returns the artifact texts after writing them."""
    from .report import render_report

    analysis = analyse(cfg)
    files: dict[str, str] = {}
    files.update(count(cfg, analysis))
    files.update(indicators(cfg, analysis))
    files.update(compare(cfg, analysis))
    files.update(graph(cfg, files["comparisons.csv"]))
    files["report.md"] = render_report(files, cfg.digest(), analysis.corpus.registry)
    write_outputs(cfg.out, files)
    return files


def load_artifacts(out_dir: Path, names=ARTIFACTS[:-1]) -> dict[str, str]:
    files = {}
    for name in names:
        path = Path(out_dir) / name
        if not path.exists():
            if name in ("graph.net", "graph.gv"):
                continue
            raise PipelineError(f"missing artifact {path}")
        files[name] = path.read_text(encoding="utf-8")
    return files


def registry_or_none(cfg: RunConfig) -> UnitRegistry | None:
    try:
        return load_registry(cfg.registry) if cfg.registry else None
    except (OSError, FracciteError):
        return None
