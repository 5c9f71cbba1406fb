"""Shared fixtures and independent reference implementations.

The reference helpers deliberately avoid the package's bitmask machinery:
they use networkx for distances and frozensets for positions, so agreement
with the package is meaningful.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx
import pytest

from gpgames.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def nx_dist(h: nx.Graph) -> dict:
    return dict(nx.all_pairs_shortest_path_length(h))


def ref_is_gp(dist: dict, s) -> bool:
    """No member of ``s`` lies on a geodesic between two others."""
    for a, b, c in itertools.permutations(s, 3):
        if b in dist[a] and c in dist[b] and c in dist[a]:
            if dist[a][b] + dist[b][c] == dist[a][c]:
                return False
    return True


def ref_winner(g: Graph, rule: str, misere: bool) -> str:
    """Brute-force winner ("A"/"B") over frozenset positions."""
    h = to_nx(g)
    dist = nx_dist(h)
    verts = range(g.n)

    def legal(s: frozenset, x: int) -> bool:
        if rule == "gp":
            return ref_is_gp(dist, s | {x})
        if rule == "independent":
            return all(not h.has_edge(x, y) for y in s)
        return all(h.has_edge(x, y) for y in s)

    @lru_cache(maxsize=None)
    def mover_wins(s: frozenset) -> bool:
        moves = [x for x in verts if x not in s and legal(s, x)]
        if not moves:
            return misere
        return any(not mover_wins(s | {x}) for x in moves)

    return "A" if mover_wins(frozenset()) else "B"


def hub_prism_graph() -> Graph:
    """Hub 0 joined to a triangular prism K_3 x K_2 on vertices 1..6."""
    prism = [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)]
    return Graph.from_edges(7, prism + [(0, v) for v in range(1, 7)])


def edge_plus_isolated() -> Graph:
    """Three vertices, a single edge between the second and third."""
    return Graph.from_edges(3, [(1, 2)])


@pytest.fixture
def hub_prism() -> Graph:
    return hub_prism_graph()


@pytest.fixture
def hub_prism_file(tmp_path):
    from gpgames.graph import format_graph

    p = tmp_path / "hub_prism.gp"
    p.write_text(format_graph(hub_prism_graph(), ["hub plus triangular prism"]))
    return str(p)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
