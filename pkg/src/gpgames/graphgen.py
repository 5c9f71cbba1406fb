"""Small-graph enumeration and seeded random graphs for sweeps."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .graph import Graph, is_connected


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def canonical_form(g: Graph) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Lexicographically least relabelled edge list (brute force; small n only)."""
    best = None
    edges = g.edges()
    for perm in itertools.permutations(range(g.n)):
        relabelled = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or relabelled < best:
            best = relabelled
    return g.n, best or ()


def connected_graphs_up_to_iso(n: int) -> list[Graph]:
    seen = {}
    for g in all_labeled_graphs(n):
        if not is_connected(g):
            continue
        key = canonical_form(g)
        if key not in seen:
            seen[key] = Graph.from_edges(n, key[1])
    return [seen[k] for k in sorted(seen)]


def random_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    return Graph.from_edges(
        n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p]
    )


def random_connected_graph(n: int, rng: random.Random, p: float = 0.3) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for e in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add(e)
    return Graph.from_edges(n, sorted(edges))


def random_connected_bipartite(n: int, rng: random.Random, p: float = 0.4) -> Graph:
    """Random connected graph whose edges only join the two colour classes."""
    while True:
        side = [rng.random() < 0.5 for _ in range(n)]
        if n > 1 and len(set(side)) < 2:
            continue
        edges = [
            (u, v)
            for u, v in itertools.combinations(range(n), 2)
            if side[u] != side[v] and rng.random() < p
        ]
        g = Graph.from_edges(n, edges)
        if is_connected(g):
            return g
