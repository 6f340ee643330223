"""Non-significance graph between units and its homogeneous groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import FracciteError
from .stats.posthoc import PairwiseComparison, PosthocResult


@dataclass(frozen=True)
class SimilarityGraph:
    """Units linked when their mean impacts do NOT differ significantly."""

    nodes: tuple[str, ...]
    edges: frozenset[frozenset[str]]
    alpha: float | None = None
    method: str = ""

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes)))
        known = set(self.nodes)
        for e in self.edges:
            if len(e) != 2:
                raise FracciteError(f"invalid edge {sorted(e)}: self-loops are not allowed")
            if not e <= known:
                raise FracciteError(f"edge {sorted(e)} uses an unknown node")

    def neighbours(self, node: str) -> set[str]:
        return {v for e in self.edges if node in e for v in e if v != node}

    def sorted_edges(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def components(self) -> list[tuple[str, ...]]:
        adj = {n: self.neighbours(n) for n in self.nodes}
        seen: set[str] = set()
        out = []
        for n in self.nodes:
            if n in seen:
                continue
            stack, comp = [n], set()
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(adj[v] - comp)
            seen |= comp
            out.append(tuple(sorted(comp)))
        return out


def build_similarity_graph(comparisons: PosthocResult | Sequence[PairwiseComparison],
                           nodes: Iterable[str] | None = None) -> SimilarityGraph:
    """Edge (i, j) iff the comparison of i and j is not significant."""
    alpha, method = None, ""
    if isinstance(comparisons, PosthocResult):
        alpha, method = comparisons.alpha, comparisons.method
        nodes = comparisons.labels if nodes is None else nodes
        comparisons = comparisons.comparisons
    if nodes is None:
        nodes = sorted({c.unit_i for c in comparisons} | {c.unit_j for c in comparisons})
    nodes = list(nodes)
    flags: dict[frozenset[str], bool] = {}
    for c in comparisons:
        flags.setdefault(frozenset((c.unit_i, c.unit_j)), c.significant)
        if alpha is None:
            alpha = c.alpha
    edges = set()
    for a, b in combinations(sorted(nodes), 2):
        pair = frozenset((a, b))
        if pair not in flags:
            raise FracciteError(f"no comparison for pair ({a}, {b})")
        if not flags[pair]:
            edges.add(pair)
    return SimilarityGraph(tuple(nodes), frozenset(edges), alpha, method)


def maximal_cliques(graph: SimilarityGraph) -> list[tuple[str, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), isolated nodes as singletons.

    Each clique is a sorted tuple; the list is sorted lexicographically.
    """
    adj = {n: graph.neighbours(n) for n in graph.nodes}
    found: list[tuple[str, ...]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        # pivot with most neighbours in p; ties broken by name for determinism
        pivot = max(sorted(p | x), key=lambda u: len(p & adj[u]))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(graph.nodes), set())
    return sorted(found)


def export_pajek(graph: SimilarityGraph) -> str:
    """Pajek ``.net`` text: vertices numbered from 1 in sorted-id order."""
    index = {n: i for i, n in enumerate(graph.nodes, start=1)}
    lines = [f"*Vertices {len(graph.nodes)}"]
    lines += [f'{i} "{_quote_pajek(n)}"' for n, i in index.items()]
    lines.append("*Edges")
    pairs = sorted((index[a], index[b]) for a, b in graph.sorted_edges())
    lines += [f"{i} {j}" for i, j in pairs]
    return "\n".join(lines) + "\n"


def _quote_pajek(label: str) -> str:
    return label.replace('"', "'")


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(graph: SimilarityGraph, groups: Sequence[Sequence[str]] | None = None) -> str:
    """Graphviz text: one ``--`` statement per edge, one cluster per group."""
    if groups is None:
        groups = maximal_cliques(graph)
    lines = ["graph similarity {"]
    meta = []
    if graph.method:
        meta.append(f"method={graph.method}")
    if graph.alpha is not None:
        meta.append(f"alpha={graph.alpha:g}")
    if meta:
        lines.append(f'  label="{" ".join(meta)}";')
    lines.append("  node [shape=ellipse];")
    for n in graph.nodes:
        lines.append(f"  {_dot_id(n)};")
    for gi, members in enumerate(groups, start=1):
        lines.append(f"  subgraph cluster_{gi} {{")
        lines.append(f'    label="group {gi}";')
        lines.append("    style=rounded;")
        lines.append("    " + " ".join(f"{_dot_id(m)};" for m in members))
        lines.append("  }")
    for a, b in graph.sorted_edges():
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
