"""Regenerate the golden files under tests/fixtures/golden.

Run only after the outputs have been checked by hand: the graph of the published
comparison table against its edge list, the synthetic run against the unit tables.
"""

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from fraccite.bibdata import serialize_canonical  # noqa: E402
from fraccite.config import RunConfig  # noqa: E402
from fraccite.grouping import build_similarity_graph, export_dot, export_pajek, maximal_cliques  # noqa: E402
from fraccite.pipeline import run_pipeline  # noqa: E402
from fraccite.synth import unit_targets_corpus  # noqa: E402
from paperdata import GOLDEN, table4_comparisons  # noqa: E402


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    g = build_similarity_graph(table4_comparisons())
    (GOLDEN / "table4.net").write_text(export_pajek(g), encoding="utf-8")
    (GOLDEN / "table4.gv").write_text(export_dot(g, maximal_cliques(g)), encoding="utf-8")

    s = unit_targets_corpus()
    out = GOLDEN / "synthetic"
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        (tmp / "corpus.jsonl").write_text(serialize_canonical(s.cited, s.citing), encoding="utf-8")
        (tmp / "registry.csv").write_text(s.registry.to_csv(), encoding="utf-8")
        run_pipeline(RunConfig(registry=tmp / "registry.csv", inputs=(tmp / "corpus.jsonl",), out=out))


if __name__ == "__main__":
    main()
