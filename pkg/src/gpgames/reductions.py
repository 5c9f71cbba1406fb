"""Hardness constructions compiled to labelled graphs, plus a QBF evaluator.

Three compilers:

* clique-forming on H  ->  gp-achievement (universal vertex + pendant friends)
* misère clique-forming on H  ->  gp-avoidance (universal vertex + C5 gadgets)
* TQBF  ->  misère Node Kayles (twin-split variant of Schaefer's graph)

Every compiler rebuilds the edge set from the vertex labels alone and
checks it against what it constructed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .engine import GameKind, Player
from .graph import (
    CAPACITY,
    CapacityError,
    Graph,
    GraphError,
    GraphFormatError,
    UNREACHABLE,
    basic_properties,
    complement,
)

GADGET_NAMES = "abcde"

Literal = tuple[int, bool]  # (variable index >= 1, positive?)


class ReductionError(GraphError):
    pass


# -- labels -------------------------------------------------------------------

@dataclass(frozen=True)
class Role:
    """Gadget origin of one vertex in a compiled graph."""

    name: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(str(a) for a in self.args)})"


def universal() -> Role:
    return Role("Universal")


def original(i: int) -> Role:
    return Role("Original", (i,))


def friend(i: int) -> Role:
    return Role("Friend", (i,))


def gadget(i: int, pos: str) -> Role:
    return Role("GadgetC5", (i, pos))


def pos_literal(i: int) -> Role:
    return Role("PosLiteral", (i,))


def neg_literal(i: int) -> Role:
    return Role("NegLiteral", (i,))


def clause(k: int) -> Role:
    return Role("Clause", (k,))


def twin(i: int, j: int, which: str) -> Role:
    return Role("TwinY", (i, j, which))


@dataclass(frozen=True)
class ReducedGraph:
    graph: Graph
    labels: tuple[Role, ...]

    def labels_text(self) -> str:
        return "".join(f"{v} {role}\n" for v, role in enumerate(self.labels))

    def index_of(self, role: Role) -> int:
        return self.labels.index(role)


def _audit(g: Graph, labels: Sequence[Role], expected_edge) -> None:
    if len(set(labels)) != len(labels):
        raise ReductionError("labels are not unique")
    for u, v in itertools.combinations(range(g.n), 2):
        if g.has_edge(u, v) != bool(expected_edge(labels[u], labels[v])):
            raise ReductionError(f"edge {u}-{v} disagrees with labels {labels[u]}, {labels[v]}")


# -- clique-forming -> gp games --------------------------------------------------

def clique_to_gp_achievement(h: Graph) -> ReducedGraph:
    """H plus a vertex joined to all of H, plus one pendant friend per vertex.

    Vertices: H keeps indices ``0..n-1`` (label ``Original(i+1)``), the
    universal vertex is ``n``, and the friend of ``v_i`` is ``n + 1 + i``.
    """
    n = h.n
    total = 2 * n + 1
    if total > CAPACITY:
        raise CapacityError(f"reduction needs {total} vertices, capacity is {CAPACITY}")
    u = n
    edges = list(h.edges())
    edges += [(u, v) for v in range(n)]
    edges += [(v, n + 1 + v) for v in range(n)]
    g = Graph.from_edges(total, edges)
    labels = tuple([original(i + 1) for i in range(n)] + [universal()]
                   + [friend(i + 1) for i in range(n)])

    def expected(a: Role, b: Role) -> bool:
        pair = {a.name, b.name}
        if pair == {"Original"}:
            return h.has_edge(a.args[0] - 1, b.args[0] - 1)
        if pair == {"Universal", "Original"}:
            return True
        if pair == {"Original", "Friend"}:
            return a.args == b.args
        return False

    _audit(g, labels, expected)
    _check_diameter(g)
    return ReducedGraph(g, labels)


def misere_clique_to_gp_avoidance(h: Graph) -> ReducedGraph:
    """H plus a universal vertex, plus a 5-cycle gadget fully joined to each ``v_i``.

    Gadget ``i`` occupies ``n + 1 + 5i .. n + 5 + 5i`` in the order a..e.
    """
    n = h.n
    total = 6 * n + 1
    if total > CAPACITY:
        raise CapacityError(f"reduction needs {total} vertices, capacity is {CAPACITY}")
    u = n
    edges = list(h.edges())
    edges += [(u, v) for v in range(n)]
    for v in range(n):
        base = n + 1 + 5 * v
        ring = [base + k for k in range(5)]
        edges += [(ring[k], ring[(k + 1) % 5]) for k in range(5)]
        edges += [(v, w) for w in ring]
    g = Graph.from_edges(total, edges)
    labels = [original(i + 1) for i in range(n)] + [universal()]
    for i in range(n):
        labels += [gadget(i + 1, p) for p in GADGET_NAMES]
    labels_t = tuple(labels)

    def expected(a: Role, b: Role) -> bool:
        pair = {a.name, b.name}
        if pair == {"Original"}:
            return h.has_edge(a.args[0] - 1, b.args[0] - 1)
        if pair == {"Universal", "Original"}:
            return True
        if pair == {"Original", "GadgetC5"}:
            return a.args[0] == b.args[0]
        if pair == {"GadgetC5"}:
            if a.args[0] != b.args[0]:
                return False
            gap = abs(GADGET_NAMES.index(a.args[1]) - GADGET_NAMES.index(b.args[1]))
            return gap in (1, 4)
        return False

    _audit(g, labels_t, expected)
    _check_diameter(g)
    return ReducedGraph(g, labels_t)


def _check_diameter(g: Graph) -> None:
    diameter = basic_properties(g).diameter
    if diameter is UNREACHABLE or diameter > 4:
        raise ReductionError(f"reduction output has diameter {diameter}, expected <= 4")


# -- quantified formulas ----------------------------------------------------------

@dataclass(frozen=True)
class QBF:
    """Totally quantified CNF over ``x_1..x_n``.

    ``x_n`` is existential and set first; quantifiers alternate inward, so
    ``x_i`` is existential exactly when ``n - i`` is even.
    """

    num_vars: int
    clauses: tuple[tuple[Literal, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise ValueError("a formula needs at least one variable")
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            for var, _ in c:
                if not 1 <= var <= self.num_vars:
                    raise ValueError(f"variable {var} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


TAUTOLOGY: tuple[Literal, ...] = ((1, True), (1, False))


def _is_tautology_on_x1(c: tuple[Literal, ...]) -> bool:
    return c == TAUTOLOGY


def tqbf_normalize(f: QBF) -> QBF:
    """Even variable count and first clause ``(x_1 or not x_1)``.

    An odd formula gets a fresh innermost variable (new ``x_1``, all others
    shifted up by one), which keeps every original variable with its mover.
    """
    n, clauses = f.num_vars, f.clauses
    if n % 2 == 1:
        n += 1
        clauses = tuple(tuple((v + 1, sign) for v, sign in c) for c in clauses)
    if not clauses or not _is_tautology_on_x1(clauses[0]):
        clauses = (TAUTOLOGY,) + clauses
    return QBF(n, clauses)


def is_normalized(f: QBF) -> bool:
    return f.num_vars % 2 == 0 and bool(f.clauses) and _is_tautology_on_x1(f.clauses[0])


def tqbf_evaluate(f: QBF) -> str:
    """``"Player1"`` if the quantified formula is true, else ``"Player2"``."""
    n = f.num_vars
    clause_masks = []
    for c in f.clauses:
        pos = neg = 0
        for var, sign in c:
            if sign:
                pos |= 1 << var
            else:
                neg |= 1 << var
        clause_masks.append((pos, neg))

    @lru_cache(maxsize=None)
    def value(i: int, assignment: int) -> bool:
        # `assignment` holds the truth values of x_{i+1}..x_n (bit = true)
        if i == 0:
            return all(assignment & pos or ~assignment & neg for pos, neg in clause_masks)
        branches = (value(i - 1, assignment | 1 << i), value(i - 1, assignment))
        return any(branches) if (n - i) % 2 == 0 else all(branches)

    return "Player1" if value(n, 0) else "Player2"


def tqbf_to_misere_kayles(f: QBF) -> ReducedGraph:
    """Schaefer's Node Kayles graph with every ``y_{i,j}`` split into false twins.

    Vertex order: ``x_1, not x_1, x_2, not x_2, ...``, then the clause
    vertices, then twins ordered by ``(i, j, ', '')``.
    """
    if not is_normalized(f):
        raise ReductionError("formula must be normalized (even n, first clause x1 or not x1)")
    n, m = f.num_vars, f.num_clauses
    total = 2 * n + m + n * (n + 1)
    if total > CAPACITY:
        raise CapacityError(f"reduction needs {total} vertices, capacity is {CAPACITY}")

    labels: list[Role] = []
    for i in range(1, n + 1):
        labels += [pos_literal(i), neg_literal(i)]
    labels += [clause(k) for k in range(1, m + 1)]
    for i in range(1, n + 1):
        for j in range(i):
            labels += [twin(i, j, "'"), twin(i, j, "''")]
    index = {role: v for v, role in enumerate(labels)}

    level: dict[int, list[int]] = {i: [] for i in range(n + 1)}
    for v, role in enumerate(labels):
        if role.name in ("PosLiteral", "NegLiteral"):
            level[role.args[0]].append(v)
        elif role.name == "Clause":
            level[0].append(v)
        else:
            level[role.args[0]].append(v)

    edges: set[tuple[int, int]] = set()

    def add(a: int, b: int) -> None:
        edges.add((min(a, b), max(a, b)))

    for i in range(n + 1):
        for a, b in itertools.combinations(level[i], 2):
            ra, rb = labels[a], labels[b]
            if ra.name == rb.name == "TwinY" and ra.args[:2] == rb.args[:2]:
                continue
            add(a, b)
    for k, c in enumerate(f.clauses, start=1):
        for var, sign in c:
            lit = pos_literal(var) if sign else neg_literal(var)
            add(index[lit], index[clause(k)])
    for i in range(1, n + 1):
        for j in range(i):
            targets = [w for lv in range(i) if lv != j for w in level[lv]]
            for which in ("'", "''"):
                y = index[twin(i, j, which)]
                for w in targets:
                    add(y, w)
    g = Graph.from_edges(total, sorted(edges))

    literal_in = {
        (k, var, sign) for k, c in enumerate(f.clauses, start=1) for var, sign in c
    }

    def level_of(r: Role) -> int:
        return 0 if r.name == "Clause" else r.args[0]

    def expected(a: Role, b: Role) -> bool:
        if a.name == "Clause" and b.name == "Clause":
            return True
        if {a.name, b.name} & {"PosLiteral", "NegLiteral"} and "Clause" in (a.name, b.name):
            lit, cl = (a, b) if a.name != "Clause" else (b, a)
            return (cl.args[0], lit.args[0], lit.name == "PosLiteral") in literal_in
        if a.name == "TwinY" and b.name == "TwinY" and a.args[:2] == b.args[:2]:
            return False
        la, lb = level_of(a), level_of(b)
        if la == lb:
            return True
        # the higher-level vertex must be a twin whose excluded level is not the other's
        hi, lo_level = (a, lb) if la > lb else (b, la)
        return hi.name == "TwinY" and hi.args[1] != lo_level

    _audit(g, labels, expected)
    return ReducedGraph(g, tuple(labels))


def parse_qbf(text: str) -> QBF:
    """Read ``p cnf <n> <m>`` plus zero-terminated clause lines (no quantifier lines)."""
    header: tuple[int, int] | None = None
    clauses: list[tuple[Literal, ...]] = []
    current: list[Literal] = []
    current_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if header is not None:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphFormatError("expected 'p cnf <n> <m>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise GraphFormatError("header counts must be integers", lineno) from None
            if header[0] < 1 or header[1] < 0:
                raise GraphFormatError("bad header counts", lineno)
            continue
        if parts[0] in ("e", "a"):
            raise GraphFormatError("quantifier lines are not accepted", lineno)
        if header is None:
            raise GraphFormatError("clause before header", lineno)
        for tok in parts:
            try:
                lit = int(tok)
            except ValueError:
                raise GraphFormatError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise GraphFormatError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise GraphFormatError(f"variable {abs(lit)} exceeds n={header[0]}", lineno)
            if not current:
                current_line = lineno
            current.append((abs(lit), lit > 0))
    if header is None:
        raise GraphFormatError("missing 'p cnf' header")
    if current:
        raise GraphFormatError("clause not terminated by 0", current_line)
    if len(clauses) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} clauses, found {len(clauses)}")
    return QBF(header[0], tuple(clauses))


def format_qbf(f: QBF) -> str:
    lines = [f"p cnf {f.num_vars} {f.num_clauses}"]
    for c in f.clauses:
        lines.append(" ".join(str(v if s else -v) for v, s in c) + " 0")
    return "\n".join(lines) + "\n"


# -- duality ----------------------------------------------------------------------

_DUAL = {
    GameKind.NODE_KAYLES: GameKind.CLIQUE_FORMING,
    GameKind.CLIQUE_FORMING: GameKind.NODE_KAYLES,
    GameKind.MISERE_NODE_KAYLES: GameKind.MISERE_CLIQUE_FORMING,
    GameKind.MISERE_CLIQUE_FORMING: GameKind.MISERE_NODE_KAYLES,
}


def kayles_clique_duality(g: Graph, kind: GameKind) -> tuple[Graph, GameKind]:
    if kind not in _DUAL:
        raise ValueError(f"{kind.label} is not a Kayles or clique-forming game")
    return complement(g), _DUAL[kind]


def qbf_player_to_engine(winner: str) -> Player:
    return Player.FIRST if winner == "Player1" else Player.SECOND
