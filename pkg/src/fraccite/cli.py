"""Command-line entry point: ``fraccite <stage> [options] [corpus.jsonl ...]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import pipeline
from .bibdata import serialize_canonical
from .config import GRAPH_FORMATS, RunConfig, load_config
from .errors import FracciteError
from .report import render_report
from .synth import random_corpus, unit_targets_corpus

log = logging.getLogger("fraccite")

STAGES = ("ingest", "count", "indicators", "compare", "graph", "report", "run")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("inputs", nargs="*", type=Path, help="canonical record streams (JSON lines)")
    p.add_argument("--config", type=Path, help="JSON config file; flags override it")
    p.add_argument("--registry", type=Path, help="unit registry table")
    p.add_argument("--cited", action="append", type=Path, help="tagged export of the cited publications")
    p.add_argument("--citing", action="append", type=Path, help="tagged export of the citing papers")
    p.add_argument("--links", action="append", type=Path, help="citing_id,cited_id table for tagged input")
    p.add_argument("--pub-window", help="publication years, e.g. 2005:2007")
    p.add_argument("--cite-window", help="citing years, e.g. 2009")
    p.add_argument("--alpha", type=float, help="significance level (default 0.05)")
    p.add_argument("--posthoc", choices=("auto", "tukey", "dunnett-c"),
                   help="post-hoc procedure; auto picks Dunnett's C when Levene rejects")
    p.add_argument("--exclude-self-citations", dest="include_self_citations", action="store_const",
                   const=False, default=None, help="drop citations from papers of the cited unit")
    p.add_argument("--levene-center", choices=("mean", "median"))
    p.add_argument("--unrounded-correlations", dest="rounded_correlations", action="store_const",
                   const=False, default=None, help="rank unrounded indicator values")
    p.add_argument("--out", type=Path, help="output directory (default ./out)")
    p.add_argument("--format", choices=GRAPH_FORMATS, help="graph file format(s)")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraccite",
        description="Fractionally counted citation impact of research units, with post-hoc comparisons.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "ingest": "parse and filter inputs, write corpus.jsonl",
        "count": "integer and fractional citation counts per unit",
        "indicators": "indicator table and rank correlations",
        "compare": "ANOVA, Kruskal-Wallis and pairwise post-hoc comparisons",
        "graph": "similarity graph from comparisons.csv in --out",
        "report": "Markdown report from the artifacts in --out",
        "run": "all stages",
    }
    for stage in STAGES:
        _add_common(sub.add_parser(stage, help=helps[stage]))
    syn = sub.add_parser("synth", help="write a synthetic corpus and registry")
    syn.add_argument("--preset", choices=("korea", "random"), default="korea")
    syn.add_argument("--seed", type=int)
    syn.add_argument("--n-citing", type=int, default=100_000)
    syn.add_argument("--n-cited", type=int, default=50_000)
    syn.add_argument("--out", type=Path, default=Path("."))
    syn.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig()
    overrides = {
        "registry": args.registry,
        "inputs": tuple(args.inputs) or None,
        "cited": tuple(args.cited) if args.cited else None,
        "citing": tuple(args.citing) if args.citing else None,
        "links": tuple(args.links) if args.links else None,
        "pub_window": args.pub_window,
        "cite_window": args.cite_window,
        "alpha": args.alpha,
        "posthoc": args.posthoc,
        "include_self_citations": args.include_self_citations,
        "levene_center": args.levene_center,
        "rounded_correlations": args.rounded_correlations,
        "out": args.out,
        "format": args.format,
    }
    return base.with_overrides(**overrides)


def _synth(args) -> None:
    if args.preset == "korea":
        s = unit_targets_corpus(seed=2009 if args.seed is None else args.seed)
    else:
        s = random_corpus(args.n_citing, args.n_cited, seed=7 if args.seed is None else args.seed)
    pipeline.write_outputs(args.out, {"corpus.jsonl": serialize_canonical(s.cited, s.citing),
                                      "registry.csv": s.registry.to_csv()})


def run_stage(command: str, cfg: RunConfig) -> dict[str, str]:
    if command == "run":
        return pipeline.run_pipeline(cfg)
    if command == "graph":
        files = pipeline.load_artifacts(cfg.out, ("comparisons.csv",))
        out = pipeline.graph(cfg, files["comparisons.csv"])
    elif command == "report":
        files = pipeline.load_artifacts(cfg.out)
        out = {"report.md": render_report(files, cfg.digest(), pipeline.registry_or_none(cfg))}
    else:
        out = getattr(pipeline, command)(cfg)
    pipeline.write_outputs(cfg.out, out)
    return out


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "synth":
            _synth(args)
            return 0
        cfg = config_from_args(args)
        written = run_stage(args.command, cfg)
    except FracciteError as exc:
        print(f"fraccite {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"fraccite {args.command}: error: {exc}", file=sys.stderr)
        return 1
    for name in written:
        log.info("wrote %s", Path(cfg.out) / name)
    return 0


if __name__ == "__main__":
    sys.exit(main())
