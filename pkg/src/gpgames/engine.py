"""Exact solver for gp, Node Kayles and clique-forming games.

A position is just the set of selected vertices; the player to move is
determined by its size (First moves when it is even).  The solver is a
memoised negamax over selected-vertex bitmasks.
"""

from __future__ import annotations

import enum
import os
import sys
from dataclasses import dataclass

from .graph import (
    CapacityError,
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    bits,
    is_general_position,
    playable_set,
    popcount,
    triple_block_masks,
)

DEFAULT_GP_LIMIT = 24
DEFAULT_SET_LIMIT = 32
ENV_LIMIT = "GPGAMES_MAX_VERTICES"


class SizeLimitError(CapacityError):
    pass


class IllegalPositionError(GraphError):
    pass


class Rule(enum.Enum):
    GP = "gp"
    INDEPENDENT = "independent"
    CLIQUE = "clique"


class GameKind(enum.Enum):
    GP_ACHIEVEMENT = ("gp-achieve", Rule.GP, False)
    GP_AVOIDANCE = ("gp-avoid", Rule.GP, True)
    NODE_KAYLES = ("kayles", Rule.INDEPENDENT, False)
    MISERE_NODE_KAYLES = ("kayles-misere", Rule.INDEPENDENT, True)
    CLIQUE_FORMING = ("clique", Rule.CLIQUE, False)
    MISERE_CLIQUE_FORMING = ("clique-misere", Rule.CLIQUE, True)

    def __init__(self, label: str, rule: Rule, misere: bool):
        self.label = label
        self.rule = rule
        self.misere = misere

    @classmethod
    def from_label(cls, label: str) -> GameKind:
        for kind in cls:
            if kind.label == label:
                return kind
        raise ValueError(f"unknown game {label!r}")

    @property
    def is_gp(self) -> bool:
        return self.rule is Rule.GP


class Player(enum.Enum):
    FIRST = "A"
    SECOND = "B"

    @property
    def other(self) -> Player:
        return Player.SECOND if self is Player.FIRST else Player.FIRST


@dataclass(frozen=True)
class Position:
    selected: int = 0

    @property
    def mover(self) -> Player:
        return Player.FIRST if popcount(self.selected) % 2 == 0 else Player.SECOND

    def play(self, v: int) -> Position:
        return Position(self.selected | 1 << v)


@dataclass
class SolveResult:
    winner: Player
    game_length_bound: int
    principal_variation: list[int]
    nodes_expanded: int


def default_limit(kind: GameKind) -> int:
    env = os.environ.get(ENV_LIMIT)
    if env:
        return int(env)
    return DEFAULT_GP_LIMIT if kind.is_gp else DEFAULT_SET_LIMIT


def _position_is_legal(g: Graph, dm: DistanceMatrix, s: int, kind: GameKind) -> bool:
    if s & ~g.full:
        return False
    if kind.rule is Rule.INDEPENDENT:
        return g.induced_is_independent(s)
    if kind.rule is Rule.CLIQUE:
        return g.induced_is_clique(s)
    return is_general_position(g, dm, s)


def legal_moves(g: Graph, dm: DistanceMatrix, pos: Position, kind: GameKind) -> int:
    s = pos.selected
    if not _position_is_legal(g, dm, s, kind):
        raise IllegalPositionError(f"selected set is not legal for {kind.label}")
    if kind.rule is Rule.GP:
        return playable_set(g, dm, s)
    moves = g.full & ~s
    for v in bits(s):
        if kind.rule is Rule.INDEPENDENT:
            moves &= ~g.adj[v]
        else:
            moves &= g.adj[v]
    return moves


def _mover_wins_after_exact(remaining: int, misere: bool) -> bool:
    # exactly `remaining` moves left regardless of play; mover makes the last one iff odd
    return (remaining % 2 == 1) != misere


def parity_shortcut(
    g: Graph, dm: DistanceMatrix, pos: Position, kind: GameKind
) -> Player | None:
    """Winner when the selected set plus every playable vertex is itself gp.

    In that case the rest of the game lasts exactly ``|playable|`` moves
    no matter how it is played.
    """
    if not kind.is_gp:
        raise ValueError("parity shortcut applies to gp games only")

    pl = legal_moves(g, dm, pos, kind)
    if not is_general_position(g, dm, pos.selected | pl):
        return None
    wins = _mover_wins_after_exact(popcount(pl), kind.misere)
    return pos.mover if wins else pos.mover.other


class Solver:
    """Memoised search for one graph and game kind.

    ``use_shortcut`` and ``use_memo`` only change speed, never verdicts;
    they exist so tests can compare against the plain search.
    """

    def __init__(
        self,
        g: Graph,
        kind: GameKind,
        *,
        max_vertices: int | None = None,
        use_shortcut: bool = True,
        use_memo: bool = True,
    ):
        limit = default_limit(kind) if max_vertices is None else max_vertices
        if g.n > limit:
            raise SizeLimitError(
                f"{g.n} vertices exceeds the {kind.label} solver limit of {limit}"
            )
        self.g = g
        self.kind = kind
        self.dm = all_pairs_distances(g)
        self.use_shortcut = use_shortcut and kind.is_gp
        self.memo: dict[int, bool] | None = {} if use_memo else None
        self.nodes = 0
        self._block = triple_block_masks(g, self.dm) if kind.is_gp else None
        if kind.rule is Rule.INDEPENDENT:
            self._keep = [g.full & ~g.adj[v] & ~(1 << v) for v in range(g.n)]
        elif kind.rule is Rule.CLIQUE:
            self._keep = list(g.adj)
        else:
            self._keep = None
        if sys.getrecursionlimit() < 4 * g.n + 200:
            sys.setrecursionlimit(4 * g.n + 200)

    # -- move generation --------------------------------------------------

    def moves(self, s: int) -> int:
        """Legal moves from selected set ``s`` (assumed legal)."""
        if self._keep is not None:
            moves = self.g.full & ~s
            for v in bits(s):
                moves &= self._keep[v]
            return moves
        block = self._block
        members = list(bits(s))
        moves = self.g.full & ~s
        for i, a in enumerate(members):
            row = block[a]
            for b in members[i + 1:]:
                moves &= ~row[b]
        return moves

    def child_moves(self, s: int, moves: int, x: int) -> int:
        """Legal moves after adding ``x`` to ``s``, given ``moves`` at ``s``."""
        nxt = moves & ~(1 << x)
        if self._keep is not None:
            return nxt & self._keep[x]
        row = self._block[x]
        for u in bits(s):
            nxt &= ~row[u]
        return nxt

    def _closed_set(self, s: int, moves: int) -> bool:
        # is s | moves in general position? (moves already compatible with s pairs)
        block = self._block
        members = list(bits(s | moves))
        whole = s | moves
        for i, a in enumerate(members):
            row = block[a]
            for b in members[i + 1:]:
                if row[b] & whole:
                    return False
        return True

    # -- search -----------------------------------------------------------

    def mover_wins(self, s: int, moves: int | None = None) -> bool:
        memo = self.memo
        if memo is not None:
            hit = memo.get(s)
            if hit is not None:
                return hit
        if moves is None:
            moves = self.moves(s)
        self.nodes += 1
        result = self._evaluate(s, moves)
        if memo is not None:
            memo[s] = result
        return result

    def _evaluate(self, s: int, moves: int) -> bool:
        misere = self.kind.misere
        if not moves:
            return misere
        if self.use_shortcut and self._closed_set(s, moves):
            return _mover_wins_after_exact(popcount(moves), misere)
        children = []
        for x in bits(moves):
            cm = self.child_moves(s, moves, x)
            children.append((popcount(cm), x, cm))
        children.sort()
        for _, x, cm in children:
            if not self.mover_wins(s | 1 << x, cm):
                return True
        return False

    # -- strategy -----------------------------------------------------------

    def best_move(self, s: int) -> int | None:
        """Lowest-index winning move, else lowest-index legal move."""
        moves = self.moves(s)
        if not moves:
            return None
        for x in bits(moves):
            if not self.mover_wins(s | 1 << x, self.child_moves(s, moves, x)):
                return x
        return next(bits(moves))

    def principal_variation(self, s: int) -> list[int]:
        pv = []
        while True:
            x = self.best_move(s)
            if x is None:
                return pv
            pv.append(x)
            s |= 1 << x


def _validated_start(solver: Solver, start: Position) -> int:
    s = start.selected
    if not _position_is_legal(solver.g, solver.dm, s, solver.kind):
        raise IllegalPositionError(f"start position is not legal for {solver.kind.label}")
    return s


def solve(
    g: Graph,
    kind: GameKind,
    start: Position = Position(),
    *,
    max_vertices: int | None = None,
    use_shortcut: bool = True,
    use_memo: bool = True,
) -> SolveResult:
    solver = Solver(
        g, kind, max_vertices=max_vertices, use_shortcut=use_shortcut, use_memo=use_memo
    )
    s = _validated_start(solver, start)
    wins = solver.mover_wins(s)
    nodes = solver.nodes
    pv = solver.principal_variation(s)
    winner = start.mover if wins else start.mover.other
    return SolveResult(winner, len(pv), pv, nodes)


def best_move(
    g: Graph, kind: GameKind, pos: Position = Position(), *, max_vertices: int | None = None
) -> int | None:
    solver = Solver(g, kind, max_vertices=max_vertices)
    return solver.best_move(_validated_start(solver, pos))


def winner_of_terminal(kind: GameKind, mover: Player) -> Player:
    """Winner when ``mover`` has no legal move."""
    return mover if kind.misere else mover.other
