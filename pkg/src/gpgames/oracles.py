"""Closed-form winners for the graph families resolved in closed form.

Each verdict names the result it comes from.  Parameters outside a
result's stated range give ``supported=False`` rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import GameKind, Player, solve
from .families import Family, FamilySpec
from .graph import Graph, GraphError, all_pairs_distances, is_connected, playable_set

A, B = Player.FIRST, Player.SECOND


@dataclass(frozen=True)
class OracleVerdict:
    winner: Player | None
    theorem_tag: str
    supported: bool = True

    def __post_init__(self) -> None:
        if self.supported != (self.winner is not None):
            raise ValueError("a supported verdict needs a winner, an unsupported one none")


def _unsupported(tag: str) -> OracleVerdict:
    return OracleVerdict(None, tag, supported=False)


def _pick(first_wins: bool, tag: str) -> OracleVerdict:
    return OracleVerdict(A if first_wins else B, tag)


def oracle(spec: FamilySpec, kind: GameKind) -> OracleVerdict:
    if kind not in (GameKind.GP_ACHIEVEMENT, GameKind.GP_AVOIDANCE):
        return _unsupported("oracles cover gp-achievement and gp-avoidance only")
    avoid = kind is GameKind.GP_AVOIDANCE
    fam, p = spec.kind, spec.params

    if fam is Family.COMPLETE:
        n = p[0]
        tag = "complete graphs: A wins avoidance iff n even (every subset is gp)"
        return _pick(n % 2 == 0 if avoid else n % 2 == 1, tag)

    if fam is Family.PATH:
        n = p[0]
        if n == 1:
            return _pick(not avoid, "single vertex: exactly one move")
        if avoid:
            return _pick(True, "paths: Pl_P(x,y) is empty, game lasts two moves")
        return _pick(False, "bipartite achievement (prior work): A wins iff #isolated vertices odd")

    if fam is Family.CYCLE:
        n = p[0]
        if avoid:
            return _pick(n == 4, "cycles: B wins avoidance iff n != 4")
        return _pick(n % 2 == 1, "cycles (prior work): B wins achievement iff n even")

    if fam is Family.MULTIPARTITE:
        k = len(p)
        if k < 2 or any(x < 2 for x in p):
            return _unsupported("complete multipartite: needs k >= 2 and all parts >= 2")
        a_avoid = k % 2 == 0 and any(x % 2 == 0 for x in p)
        if avoid:
            return _pick(a_avoid, "complete multipartite: A wins avoidance iff k even and some part even")
        return _pick(not a_avoid, "complete multipartite: A wins achievement iff B wins avoidance")

    if fam is Family.WHEEL:
        n, m = p
        if not avoid:
            return _unsupported("generalized wheels: achievement left open")
        if n < 1 or m < 3:
            return _unsupported("generalized wheels: needs n >= 1, m >= 3")
        return _pick(m == 3, "generalized wheels W_{n,m}: B wins avoidance iff m >= 4")

    if fam is Family.PETERSEN:
        if avoid:
            return _pick(True, "Petersen graph: A wins avoidance")
        return _pick(False, "Petersen graph: B wins achievement")

    if fam is Family.ROOK:
        n, m = sorted(p)
        if n < 2:
            return _unsupported("rook's graphs: needs n, m >= 2")
        if avoid:
            b_wins = (n == 2 and m % 2 == 1) or (n == 3 and m % 2 == 0)
            return _pick(not b_wins, "rook's graphs: B wins avoidance iff (n=2, m odd) or (n=3, m even)")
        return _pick(n % 2 == 1 and m % 2 == 1, "rook's graphs (prior work): A wins achievement iff n, m both odd")

    if fam is Family.GRID:
        n, m = p
        if n < 3 or m < 2:
            return _unsupported("grids: needs n >= 3, m >= 2")
        if avoid:
            return _pick(False, "grids P_n x P_m: B wins avoidance")
        return _pick(False, "bipartite achievement (prior work): B wins on connected bipartite graphs")

    if fam is Family.CYLINDER:
        n, m = p
        if n < 3 or m < 2:
            return _unsupported("cylinders: needs n >= 3, m >= 2")
        if avoid:
            return _pick(n % 2 == 0, "cylinders C_n x P_m: B wins avoidance iff n odd")
        if n % 2 == 0:
            return _pick(False, "bipartite achievement (prior work): B wins on connected bipartite graphs")
        return _unsupported("cylinders: achievement with n odd left open")

    if fam is Family.LEXK:
        if not avoid:
            return _unsupported("lexicographic products: achievement not covered")
        assert spec.base is not None
        return lex_complete_oracle(spec.base, p[0])

    return _unsupported(f"no closed form for {fam.value}")


def lex_complete_oracle(
    base: Graph, n: int, kind: GameKind = GameKind.GP_AVOIDANCE, *, max_vertices: int | None = None
) -> OracleVerdict:
    """B wins avoidance on ``base o K_n`` iff B wins it on ``base`` and n is odd.

    Solves the game on ``base`` only; the product is never searched.
    """
    if kind is not GameKind.GP_AVOIDANCE:
        return _unsupported("lexicographic products: avoidance only")
    if n < 1:
        raise GraphError("clique factor needs n >= 1")
    if not is_connected(base):
        raise GraphError("base graph must be connected")
    tag = "G o K_n: B wins avoidance iff B wins on G and n is odd"
    if n % 2 == 0:
        return _pick(True, tag)
    base_winner = solve(base, GameKind.GP_AVOIDANCE, max_vertices=max_vertices).winner
    return OracleVerdict(base_winner, tag)


def even_clique_kernel(g: Graph) -> int | None:
    """A vertex u with Pl(u, v) + {u, v} an even clique for every v != u, if any.

    Such a witness means A wins avoidance on ``g o H`` for every connected H.
    """
    if not is_connected(g):
        raise GraphError("even clique kernel needs a connected graph")
    if g.n < 2:
        return None
    dm = all_pairs_distances(g)
    for u in range(g.n):
        for v in range(g.n):
            if v == u:
                continue
            pair = (1 << u) | (1 << v)
            closed = playable_set(g, dm, pair) | pair
            if closed.bit_count() % 2 or not g.induced_is_clique(closed):
                break
        else:
            return u
    return None


def normalize_for_oracle(spec: FamilySpec) -> FamilySpec:
    """Route small degenerate products to the family that actually describes them.

    Rook(2,2) and Grid(2,2) are C_4; Grid(1,m) is a path; Grid(2,m) is
    swapped to Grid(m,2).  The oracle itself never does this.
    """
    fam, p = spec.kind, spec.params
    if fam is Family.ROOK and sorted(p) == [2, 2]:
        return FamilySpec(Family.CYCLE, (4,))
    if fam is Family.GRID:
        n, m = p
        if min(n, m) == 1:
            return FamilySpec(Family.PATH, (max(n, m),))
        if (n, m) == (2, 2):
            return FamilySpec(Family.CYCLE, (4,))
        if n < 3 <= m:
            return FamilySpec(Family.GRID, (m, n))
    return spec

