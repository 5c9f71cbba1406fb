"""Graph representation, geodesic intervals and general position primitives.

Vertex sets are plain Python ints used as bitmasks: bit ``v`` set means
vertex ``v`` is a member.  Graphs hold one neighbourhood mask per vertex.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

CAPACITY = 128


class GraphError(ValueError):
    """Invalid graph construction or argument."""


class CapacityError(GraphError):
    """Graph (or derived graph) would exceed the fixed vertex capacity."""


class GraphFormatError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class Reach(enum.Enum):
    UNREACHABLE = "unreachable"

    def __repr__(self) -> str:
        return "UNREACHABLE"


UNREACHABLE = Reach.UNREACHABLE


# -- vertex-set helpers -------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    """Yield member indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def popcount(mask: int) -> int:
    return mask.bit_count()


# -- graph --------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the open neighbourhood of ``v`` as a bitmask.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= CAPACITY:
            if self.n > CAPACITY:
                raise CapacityError(f"{self.n} vertices exceeds capacity {CAPACITY}")
            raise GraphError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = self.full
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"neighbour of {v} out of range")
            if nb >> v & 1:
                raise GraphError(f"self-loop at {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n > CAPACITY:
            raise CapacityError(f"{n} vertices exceeds capacity {CAPACITY}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def induced_is_clique(self, s: int) -> bool:
        return all(s & ~(1 << v) & ~self.adj[v] == 0 for v in bits(s))

    def induced_is_independent(self, s: int) -> bool:
        return all(self.adj[v] & s == 0 for v in bits(s))


# -- metric -------------------------------------------------------------------

class DistanceMatrix:
    """All-pairs geodesic distances; disconnected pairs hold ``UNREACHABLE``."""

    __slots__ = ("n", "_rows")

    def __init__(self, rows: Sequence[Sequence[int | Reach]]):
        self.n = len(rows)
        self._rows = tuple(tuple(r) for r in rows)

    def __call__(self, u: int, v: int) -> int | Reach:
        return self._rows[u][v]

    def row(self, u: int) -> tuple[int | Reach, ...]:
        return self._rows[u]

    def reachable(self, u: int, v: int) -> bool:
        return self._rows[u][v] is not UNREACHABLE

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DistanceMatrix) and self._rows == other._rows

    def __repr__(self) -> str:
        return f"DistanceMatrix(n={self.n})"


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """BFS from every vertex."""
    rows = []
    for src in range(g.n):
        dist: list[int | Reach] = [UNREACHABLE] * g.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            x = queue.popleft()
            dx = dist[x]
            for y in bits(g.adj[x]):
                if dist[y] is UNREACHABLE:
                    dist[y] = dx + 1  # type: ignore[operator]
                    queue.append(y)
        rows.append(dist)
    return DistanceMatrix(rows)


def _check_vertex(g: Graph, *vs: int) -> None:
    for v in vs:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")


def interval(g: Graph, dm: DistanceMatrix, u: int, v: int) -> int:
    """Vertices on some u,v-geodesic.

    An unreachable pair has no internal vertices, so its interval is {u, v}.
    """
    _check_vertex(g, u, v)
    d = dm(u, v)
    if d is UNREACHABLE:
        return (1 << u) | (1 << v)
    ru, rv = dm.row(u), dm.row(v)
    mask = 0
    for x in range(g.n):
        a, b = ru[x], rv[x]
        if a is not UNREACHABLE and b is not UNREACHABLE and a + b == d:
            mask |= 1 << x
    return mask


def interval_masks(g: Graph, dm: DistanceMatrix) -> list[list[int]]:
    """Table ``I[u][v]`` of all intervals."""
    table = [[0] * g.n for _ in range(g.n)]
    for u in range(g.n):
        table[u][u] = 1 << u
        for v in range(u + 1, g.n):
            table[u][v] = table[v][u] = interval(g, dm, u, v)
    return table


def interval_closure(g: Graph, dm: DistanceMatrix, s: int) -> int:
    members = list(bits(s))
    closure = s
    for u, v in itertools.combinations(members, 2):
        closure |= interval(g, dm, u, v)
    return closure


def is_general_position(g: Graph, dm: DistanceMatrix, s: int) -> bool:
    """No member lies strictly inside the interval of two other members."""
    members = list(bits(s))
    for u, v in itertools.combinations(members, 2):
        inner = interval(g, dm, u, v) & ~((1 << u) | (1 << v))
        if inner & s:
            return False
    return True


def _components(g: Graph, s: int) -> list[int]:
    comps = []
    left = s
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v] & s
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        left &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return len(_components(g, g.full)) == 1


def is_gp_by_characterization(g: Graph, dm: DistanceMatrix, s: int) -> bool:
    """Clique components forming an in-transitive, distance-constant partition.

    Only valid for connected graphs.
    """
    if not is_connected(g):
        raise GraphError("characterization requires a connected graph")
    classes = _components(g, s)
    if any(not g.induced_is_clique(c) for c in classes):
        return False
    p = len(classes)
    between = [[0] * p for _ in range(p)]
    for i, j in itertools.combinations(range(p), 2):
        values = {dm(u, v) for u in bits(classes[i]) for v in bits(classes[j])}
        if len(values) != 1:
            return False
        between[i][j] = between[j][i] = values.pop()
    for i, j, k in itertools.permutations(range(p), 3):
        if between[i][k] == between[i][j] + between[j][k]:
            return False
    return True


def _check_gp(g: Graph, dm: DistanceMatrix, s: int) -> None:
    if s & ~g.full:
        raise GraphError("vertex set has members outside the graph")
    if not is_general_position(g, dm, s):
        raise GraphError("selected set is not in general position")


def playable_set(g: Graph, dm: DistanceMatrix, s: int) -> int:
    """Vertices that can extend the gp set ``s``, via the two interval conditions.

    (i) x is in no interval I[u, v] with u, v in s;
    (ii) I[x, u] meets s only in u, for every u in s.
    """
    _check_gp(g, dm, s)
    members = list(bits(s))
    blocked = s
    for u, v in itertools.combinations(members, 2):
        blocked |= interval(g, dm, u, v)
    result = 0
    for x in bits(g.full & ~blocked):
        if all(interval(g, dm, x, u) & s == 1 << u for u in members):
            result |= 1 << x
    return result


def playable_set_definitional(g: Graph, dm: DistanceMatrix, s: int) -> int:
    """Same set as :func:`playable_set`, re-checking ``s + x`` directly."""
    _check_gp(g, dm, s)
    result = 0
    for x in bits(g.full & ~s):
        if is_general_position(g, dm, s | 1 << x):
            result |= 1 << x
    return result


def violated_condition(g: Graph, dm: DistanceMatrix, s: int, x: int) -> str | None:
    """Explain why ``x`` cannot extend gp set ``s``; ``None`` if it can."""
    if s >> x & 1:
        return f"vertex {x} was already selected"
    members = list(bits(s))
    for u, v in itertools.combinations(members, 2):
        if interval(g, dm, u, v) >> x & 1:
            return f"condition (i): {x} lies on a {u},{v}-geodesic"
    for u in members:
        inside = interval(g, dm, x, u) & s & ~(1 << u)
        if inside:
            w = next(bits(inside))
            return f"condition (ii): {w} lies on a {x},{u}-geodesic"
    return None


def triple_block_masks(g: Graph, dm: DistanceMatrix) -> list[list[int]]:
    """``block[a][b]``: vertices y such that {a, b, y} is not in general position.

    With these, the playable set of ``s + x`` is the playable set of ``s``
    minus ``x`` and minus ``block[x][u]`` for each ``u`` in ``s``.
    """
    n = g.n
    iv = interval_masks(g, dm)
    block = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            ends = (1 << a) | (1 << b)
            m = iv[a][b] & ~ends
            for y in range(n):
                if iv[y][b] >> a & 1 or iv[y][a] >> b & 1:
                    m |= 1 << y
            m &= ~ends
            block[a][b] = block[b][a] = m
    return block


def gp_number(g: Graph, limit: int = 24) -> int:
    """Largest general position set, by branch and bound."""
    if g.n > limit:
        raise CapacityError(f"gp_number limited to {limit} vertices (got {g.n})")
    block = triple_block_masks(g, all_pairs_distances(g))
    order = sorted(range(g.n), key=g.degree)

    # greedy lower bound: add vertices in low-degree order while playable
    greedy: list[int] = []
    cand = g.full
    for v in order:
        if cand >> v & 1:
            greedy.append(v)
            cand &= ~(1 << v)
            for u in greedy[:-1]:
                cand &= ~block[v][u]
    best = len(greedy)

    def search(members: list[int], cand: int) -> None:
        nonlocal best
        if len(members) > best:
            best = len(members)
        while cand:
            if len(members) + popcount(cand) <= best:
                return
            x = (cand & -cand).bit_length() - 1
            cand &= ~(1 << x)
            nxt = cand
            for u in members:
                nxt &= ~block[x][u]
            members.append(x)
            search(members, nxt)
            members.pop()

    search([], g.full)
    return best


@dataclass(frozen=True)
class BasicProperties:
    connected: bool
    bipartite: bool
    diameter: int | Reach


def basic_properties(g: Graph) -> BasicProperties:
    dm = all_pairs_distances(g)
    connected = all(dm.reachable(0, v) for v in range(g.n))
    color = [-1] * g.n
    bipartite = True
    for src in range(g.n):
        if color[src] >= 0:
            continue
        color[src] = 0
        queue = deque([src])
        while queue and bipartite:
            x = queue.popleft()
            for y in bits(g.adj[x]):
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    bipartite = False
                    break
    finite = [d for u in range(g.n) for d in dm.row(u) if d is not UNREACHABLE]
    diameter: int | Reach = max(finite) if connected else UNREACHABLE
    return BasicProperties(connected, bipartite, diameter)


def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[v]) for u, v in g.edges() if u in index and v in index]
    return Graph.from_edges(len(vertices), edges)


# -- text format --------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Read the ``p gp <n>`` / ``e <u> <v>`` edge-list format."""
    n: int | None = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 3 or parts[1] != "gp":
                raise GraphFormatError("expected 'p gp <n>'", lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad vertex count {parts[2]!r}", lineno) from None
            if n < 1:
                raise GraphFormatError("vertex count must be positive", lineno)
            if n > CAPACITY:
                raise CapacityError(f"line {lineno}: {n} vertices exceeds capacity {CAPACITY}")
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge before header", lineno)
            if len(parts) != 3:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("edge endpoints must be integers", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {u} {v} out of range", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at {u}", lineno)
            edges.add((min(u, v), max(u, v)))
        else:
            raise GraphFormatError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise GraphFormatError("missing 'p gp <n>' header")
    return Graph.from_edges(n, sorted(edges))


def format_graph(g: Graph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p gp {g.n}")
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())
