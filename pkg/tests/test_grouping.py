import itertools
import re

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraccite.errors import FracciteError
from fraccite.grouping import SimilarityGraph, build_similarity_graph, export_dot, export_pajek, maximal_cliques
from fraccite.stats import PairwiseComparison
from paperdata import GOLDEN, TABLE4_CLIQUES, TABLE4_COMPONENTS, TABLE4_EDGES, table4_comparisons


def read_pajek(text: str) -> SimilarityGraph:
    """Minimal reader for the subset of Pajek that export_pajek writes."""
    lines = text.splitlines()
    n = int(re.fullmatch(r"\*Vertices (\d+)", lines[0]).group(1))
    labels = {}
    for line in lines[1:n + 1]:
        i, label = re.fullmatch(r'(\d+) "(.*)"', line).groups()
        labels[int(i)] = label
    assert lines[n + 1] == "*Edges"
    edges = set()
    for line in lines[n + 2:]:
        a, b = map(int, line.split())
        edges.add(frozenset((labels[a], labels[b])))
    return SimilarityGraph(tuple(labels.values()), frozenset(edges))


def graph(nodes, edges):
    return SimilarityGraph(tuple(nodes), frozenset(frozenset(e) for e in edges))


def test_table4_graph():
    g = build_similarity_graph(table4_comparisons())
    assert set(g.edges) == TABLE4_EDGES
    assert g.components() == TABLE4_COMPONENTS
    assert maximal_cliques(g) == TABLE4_CLIQUES


def test_table4_goldens():
    g = build_similarity_graph(table4_comparisons())
    assert export_pajek(g) == (GOLDEN / "table4.net").read_text(encoding="utf-8")
    assert export_dot(g, maximal_cliques(g)) == (GOLDEN / "table4.gv").read_text(encoding="utf-8")


def comps(pairs, significant):
    out = []
    for a, b in pairs:
        out += [PairwiseComparison(a, b, 0, 1, -1, 1, significant, 0.05),
                PairwiseComparison(b, a, 0, 1, -1, 1, significant, 0.05)]
    return out


def test_all_or_no_pairs_significant():
    pairs = list(itertools.combinations("ABCD", 2))
    assert build_similarity_graph(comps(pairs, True)).edges == frozenset()
    full = build_similarity_graph(comps(pairs, False))
    assert len(full.edges) == 6
    assert maximal_cliques(full) == [("A", "B", "C", "D")]


def test_missing_pair_named():
    with pytest.raises(FracciteError, match=r"\(A, C\)"):
        build_similarity_graph(comps([("A", "B"), ("B", "C")], False))


def test_empty_graph_singletons():
    assert maximal_cliques(graph("ABC", [])) == [("A",), ("B",), ("C",)]


def test_pajek_format():
    assert export_pajek(graph("AB", [("A", "B")])) == '*Vertices 2\n1 "A"\n2 "B"\n*Edges\n1 2\n'
    assert export_pajek(graph("A", [])) == '*Vertices 1\n1 "A"\n*Edges\n'


def test_self_loop_rejected():
    with pytest.raises(FracciteError):
        SimilarityGraph(("A",), frozenset({frozenset({"A"})}))


def test_dot_one_statement_per_edge():
    g = build_similarity_graph(table4_comparisons())
    text = export_dot(g)
    assert text.startswith("graph similarity {") and text.endswith("}\n")
    assert text.count(" -- ") == len(g.edges)
    assert text.count("subgraph cluster_") == len(TABLE4_CLIQUES)


@st.composite
def random_graphs(draw):
    nodes = [f"n{i}" for i in range(draw(st.integers(1, 9)))]
    pairs = list(itertools.combinations(nodes, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return graph(nodes, chosen)


@settings(max_examples=150, deadline=None)
@given(random_graphs())
def test_cliques_match_networkx_and_cover(g):
    ours = maximal_cliques(g)
    nxg = nx.Graph()
    nxg.add_nodes_from(g.nodes)
    nxg.add_edges_from(tuple(e) for e in g.edges)
    assert ours == sorted(tuple(sorted(c)) for c in nx.find_cliques(nxg))
    assert set().union(*map(set, ours)) == set(g.nodes)
    for e in g.edges:
        assert any(e <= set(c) for c in ours)
    assert ours == sorted(ours)


@settings(max_examples=150, deadline=None)
@given(random_graphs())
def test_pajek_round_trip(g):
    back = read_pajek(export_pajek(g))
    assert back.nodes == g.nodes and back.edges == g.edges
