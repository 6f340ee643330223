import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fraccite.bibdata import serialize_canonical  # noqa: E402
from fraccite.synth import unit_targets_corpus  # noqa: E402


@pytest.fixture(scope="session")
def korea_corpus():
    return unit_targets_corpus()


@pytest.fixture(scope="session")
def korea_inputs(tmp_path_factory, korea_corpus):
    """The seven-unit synthetic corpus and registry written to disk."""
    d = tmp_path_factory.mktemp("korea")
    (d / "corpus.jsonl").write_text(serialize_canonical(korea_corpus.cited, korea_corpus.citing), encoding="utf-8")
    (d / "registry.csv").write_text(korea_corpus.registry.to_csv(), encoding="utf-8")
    return d


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
