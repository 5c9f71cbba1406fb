"""Oracle-vs-solver and reduction-vs-solver sweeps behind ``gpgames verify``.

A suite is a list of :class:`Check` objects.  Each check is a module-level
function plus plain arguments, so suites can be fanned out to a process
pool; results are always returned in check-key order.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import families as fam
from .engine import GameKind, Player, Position, Solver, solve, winner_of_terminal
from .graph import (
    Graph,
    UNREACHABLE,
    all_pairs_distances,
    basic_properties,
    bits,
    complement,
    interval,
    is_general_position,
    is_gp_by_characterization,
    playable_set,
    playable_set_definitional,
)
from .graphgen import (
    all_labeled_graphs,
    connected_graphs_up_to_iso,
    random_connected_bipartite,
    random_connected_graph,
    random_graph,
)
from .oracles import lex_complete_oracle, oracle
from .reductions import (
    QBF,
    TAUTOLOGY,
    clique_to_gp_achievement,
    misere_clique_to_gp_avoidance,
    tqbf_evaluate,
    tqbf_normalize,
    tqbf_to_misere_kayles,
)
from .report import Report

AVOID, ACHIEVE = GameKind.GP_AVOIDANCE, GameKind.GP_ACHIEVEMENT
SEARCH_LIMIT = 64  # sweeps choose instance sizes themselves

WORKED_EXAMPLE = QBF(
    4,
    (
        ((4, True),),
        ((4, False), (3, True), (2, True)),
        ((4, False), (3, True), (2, False), (1, True)),
    ),
)


@dataclass
class Outcome:
    report: Report
    detail: str = ""

    @property
    def ok(self) -> bool:
        return bool(self.report.agreement)


@dataclass(frozen=True)
class Check:
    key: tuple
    func: Callable[..., Outcome]
    args: tuple = field(default=())

    def run(self) -> Outcome:
        return self.func(*self.args)


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, int((time.perf_counter() - start) * 1000)


# -- single checks --------------------------------------------------------------

def check_family(spec_text: str, kind_label: str) -> Outcome:
    spec = fam.parse_family(spec_text)
    kind = GameKind.from_label(kind_label)
    g, _ = fam.make_named(spec)
    result, ms = _timed(lambda: solve(g, kind, max_vertices=SEARCH_LIMIT))
    verdict = oracle(spec, kind)
    agree = verdict.supported and verdict.winner == result.winner
    said = verdict.winner.value if verdict.winner else "unsupported"
    detail = "" if agree else f"oracle says {said}, solver says {result.winner.value}"
    return Outcome(
        Report(spec_text, kind.label, result.winner.value, result.nodes_expanded, ms,
               result.principal_variation, verdict.theorem_tag, agree),
        detail,
    )


def check_lex(n_base: int, edges: tuple, k: int) -> Outcome:
    base = Graph.from_edges(n_base, edges)
    g, _ = fam.lex_with_complete(base, k)
    result, ms = _timed(lambda: solve(g, AVOID, max_vertices=SEARCH_LIMIT))
    verdict = lex_complete_oracle(base, k, max_vertices=SEARCH_LIMIT)
    agree = verdict.winner == result.winner
    key = f"lex:{n_base}:{list(edges)},{k}"
    return Outcome(
        Report(key, AVOID.label, result.winner.value, result.nodes_expanded, ms,
               result.principal_variation, verdict.theorem_tag, agree),
        "" if agree else f"oracle {verdict.winner.value}, solver {result.winner.value}",
    )


def check_reduction(which: str, n: int, edges: tuple) -> Outcome:
    h = Graph.from_edges(n, edges)
    if which == "R1":
        reduced = clique_to_gp_achievement(h)
        game, source = ACHIEVE, GameKind.CLIQUE_FORMING
    else:
        reduced = misere_clique_to_gp_avoidance(h)
        game, source = AVOID, GameKind.MISERE_CLIQUE_FORMING
    g = reduced.graph
    result, ms = _timed(lambda: solve(g, game, max_vertices=SEARCH_LIMIT))
    on_h = solve(h, source, max_vertices=SEARCH_LIMIT).winner
    diameter = basic_properties(g).diameter
    diameter_ok = diameter is not UNREACHABLE and diameter <= 4
    agree = ((result.winner is Player.FIRST) == (on_h is Player.SECOND)) and diameter_ok
    detail = ""
    if not agree:
        detail = f"{game.label} on G: {result.winner.value}; {source.label} on H: {on_h.value}; diameter {diameter}"
    return Outcome(
        Report(f"{which}:{n}:{list(edges)}", game.label, result.winner.value,
               result.nodes_expanded, ms, result.principal_variation,
               f"{which}: A wins on G iff the second player wins {source.label} on H", agree),
        detail,
    )


def check_tqbf(num_vars: int, clauses: tuple) -> Outcome:
    f = QBF(num_vars, clauses)
    nf = tqbf_normalize(f)
    truth = tqbf_evaluate(nf)
    g = tqbf_to_misere_kayles(nf).graph
    result, ms = _timed(lambda: solve(g, GameKind.MISERE_NODE_KAYLES, max_vertices=SEARCH_LIMIT))
    agree = (truth == "Player1") == (result.winner is Player.FIRST) and tqbf_evaluate(f) == truth
    return Outcome(
        Report(f"tqbf:{num_vars}:{_clause_text(clauses)}", GameKind.MISERE_NODE_KAYLES.label,
               result.winner.value, result.nodes_expanded, ms, result.principal_variation,
               "TQBF: Player 1 wins iff First wins misere Node Kayles", agree),
        "" if agree else f"formula winner {truth}, misere Kayles winner {result.winner.value}",
    )


def check_worked_example() -> Outcome:
    truth = tqbf_evaluate(WORKED_EXAMPLE)
    agree = truth == "Player2"
    return Outcome(
        Report("tqbf:worked-example", "tqbf", "B" if truth == "Player2" else "A",
               theorem_tag="worked example: Player 2 wins", agreement=agree),
        "" if agree else f"evaluated to {truth}",
    )


def _clause_text(clauses) -> str:
    return " ".join("(" + ",".join(str(v if s else -v) for v, s in c) + ")" for c in clauses)


# -- property checks --------------------------------------------------------------

def _property(name: str, failures: list[str], count: int, ms: int) -> Outcome:
    return Outcome(
        Report(f"property:{name} ({count} cases)", "property", None, 0, ms, [], None, not failures),
        "; ".join(failures[:3]),
    )


def _grow_gp_set(g: Graph, dm, rng: random.Random, target: int | None = None) -> int:
    s = 0
    while True:
        pl = playable_set(g, dm, s)
        if not pl or (target is not None and s.bit_count() >= target):
            return s
        choices = list(bits(pl))
        s |= 1 << rng.choice(choices)


def _gp_corpus(seed: str, count: int):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(3, 10)
        g = random_connected_graph(n, rng, p=rng.choice((0.15, 0.3, 0.5)))
        dm = all_pairs_distances(g)
        if rng.random() < 0.5:
            s = rng.getrandbits(n)
        else:
            s = _grow_gp_set(g, dm, rng, rng.randint(1, n))
            if rng.random() < 0.3:
                s |= 1 << rng.randrange(n)
        yield g, dm, s


def check_gp_characterization(seed: str, count: int) -> Outcome:
    def run():
        failures = []
        for g, dm, s in _gp_corpus(seed, count):
            if is_general_position(g, dm, s) != is_gp_by_characterization(g, dm, s):
                failures.append(f"edges={g.edges()} s={list(bits(s))}")
        return failures
    failures, ms = _timed(run)
    return _property("gp characterization", failures, count, ms)


def check_playable_routes(seed: str, count: int) -> Outcome:
    def run():
        failures = []
        for g, dm, s in _gp_corpus(seed, count):
            if not is_general_position(g, dm, s):
                continue
            a = playable_set(g, dm, s)
            b = playable_set_definitional(g, dm, s)
            c = Solver(g, AVOID, max_vertices=SEARCH_LIMIT).moves(s)
            if not a == b == c:
                failures.append(f"edges={g.edges()} s={list(bits(s))}")
        return failures
    failures, ms = _timed(run)
    return _property("playable-set routes", failures, count, ms)


def check_cartesian_metric(seed: str, count: int, max_vertices: int) -> Outcome:
    def run():
        rng = random.Random(seed)
        failures = []
        for _ in range(count):
            a = rng.randint(1, 5)
            b = rng.randint(1, max(1, min(5, max_vertices // a)))
            g1, g2 = random_connected_graph(a, rng), random_connected_graph(b, rng)
            prod, pm = fam.cartesian_product(g1, g2)
            d1, d2, dp = all_pairs_distances(g1), all_pairs_distances(g2), all_pairs_distances(prod)
            for u, v in itertools.combinations_with_replacement(range(prod.n), 2):
                (x, y), (x2, y2) = pm.coords(u), pm.coords(v)
                if dp(u, v) != d1(x, x2) + d2(y, y2):
                    failures.append(f"distance {u},{v}")
                want = 0
                for p in bits(interval(g1, d1, x, x2)):
                    for q in bits(interval(g2, d2, y, y2)):
                        want |= 1 << pm.index(p, q)
                if interval(prod, dp, u, v) != want:
                    failures.append(f"interval {u},{v}")
        return failures
    failures, ms = _timed(run)
    return _property("cartesian distance and interval", failures, count, ms)


def check_layer_lemma(seed: str, count: int, max_vertices: int) -> Outcome:
    def run():
        rng = random.Random(seed)
        failures = []
        for _ in range(count):
            a = rng.randint(2, 5)
            b = rng.randint(2, max(2, min(5, max_vertices // a)))
            g1, g2 = random_connected_graph(a, rng), random_connected_graph(b, rng)
            prod, pm = fam.cartesian_product(g1, g2)
            dp = all_pairs_distances(prod)
            r = _grow_gp_set(prod, dp, rng)
            for u in bits(r):
                gg, hh = pm.coords(u)
                if not (pm.layer_of_second(gg) & r == 1 << u or pm.layer_of_first(hh) & r == 1 << u):
                    failures.append(f"{g1.edges()} x {g2.edges()} R={list(bits(r))}")
                    break
        return failures
    failures, ms = _timed(run)
    return _property("cartesian layer lemma", failures, count, ms)


def check_bipartite_lemma(seed: str, count: int) -> Outcome:
    def run():
        rng = random.Random(seed)
        failures = []
        for _ in range(count):
            g = random_connected_bipartite(rng.randint(3, 10), rng)
            dm = all_pairs_distances(g)
            s = _grow_gp_set(g, dm, rng)
            if s.bit_count() >= 3 and not g.induced_is_independent(s):
                failures.append(f"edges={g.edges()} s={list(bits(s))}")
        return failures
    failures, ms = _timed(run)
    return _property("bipartite independence", failures, count, ms)


def check_shortcut_agreement(spec_text: str) -> Outcome:
    def run():
        g, _ = fam.make_named(fam.parse_family(spec_text))
        failures = []
        for kind in (AVOID, ACHIEVE):
            on = solve(g, kind, max_vertices=SEARCH_LIMIT).winner
            off = solve(g, kind, max_vertices=SEARCH_LIMIT, use_shortcut=False).winner
            if on != off:
                failures.append(f"{spec_text} {kind.label}: {on.value} vs {off.value}")
        return failures
    failures, ms = _timed(run)
    return _property(f"parity shortcut on/off {spec_text}", failures, 2, ms)


def check_duality(seed: str, count: int) -> Outcome:
    pairs = (
        (GameKind.NODE_KAYLES, GameKind.CLIQUE_FORMING),
        (GameKind.MISERE_NODE_KAYLES, GameKind.MISERE_CLIQUE_FORMING),
    )

    def run():
        rng = random.Random(seed)
        failures = []
        for _ in range(count):
            g = random_graph(rng.randint(1, 10), rng, p=rng.random())
            for kayles, clique in pairs:
                if solve(g, kayles).winner != solve(complement(g), clique).winner:
                    failures.append(f"{kayles.label} edges={g.edges()}")
        return failures
    failures, ms = _timed(run)
    return _property("kayles/clique duality", failures, count, ms)


def check_pv_replay(spec_text: str, kind_label: str) -> Outcome:
    def run():
        g, _ = fam.make_named(fam.parse_family(spec_text))
        kind = GameKind.from_label(kind_label)
        res = solve(g, kind, max_vertices=SEARCH_LIMIT)
        solver = Solver(g, kind, max_vertices=SEARCH_LIMIT)
        s = 0
        for x in res.principal_variation:
            if not solver.moves(s) >> x & 1:
                return [f"illegal pv move {x}"]
            s |= 1 << x
        if solver.moves(s):
            return ["pv does not end at a terminal position"]
        if winner_of_terminal(kind, Position(s).mover) != res.winner:
            return ["pv terminal contradicts winner"]
        return []
    failures, ms = _timed(run)
    return _property(f"pv replay {spec_text} {kind_label}", failures, 1, ms)


# -- suites ---------------------------------------------------------------------

def _family_checks(specs: Sequence[str], kinds: Sequence[GameKind]) -> list[Check]:
    out = []
    for spec in specs:
        for kind in kinds:
            if oracle(fam.parse_family(spec), kind).supported:
                out.append(Check((spec, kind.label), check_family, (spec, kind.label)))
    return out


def rook_specs(max_vertices: int = 16) -> list[str]:
    return [f"rook:{n},{m}" for n in range(2, max_vertices + 1)
            for m in range(n, max_vertices + 1) if n * m <= max_vertices]


def grid_specs(max_vertices: int = 16) -> list[str]:
    return [f"grid:{n},{m}" for n in range(3, max_vertices + 1)
            for m in range(2, max_vertices + 1) if n * m <= max_vertices]


def cylinder_specs(max_vertices: int = 14) -> list[str]:
    return [f"cylinder:{n},{m}" for n in range(3, 8)
            for m in range(2, max_vertices + 1) if n * m <= max_vertices]


def multipartite_specs(max_vertices: int = 12) -> list[str]:
    out = []

    def parts(total_left: int, smallest: int, acc: list[int]):
        if len(acc) >= 2:
            out.append("multi:" + ",".join(map(str, acc)))
        for p in range(smallest, total_left + 1):
            parts(total_left - p, p, acc + [p])

    parts(max_vertices, 2, [])
    return sorted(out)


def wheel_specs(max_vertices: int = 11) -> list[str]:
    return [f"wheel:{n},{m}" for n in range(1, 4) for m in range(3, 9) if n + m <= max_vertices]


def small_family_specs(max_vertices: int = 12) -> list[str]:
    top = min(12, max_vertices)
    specs = [f"cycle:{n}" for n in range(3, top + 1)]
    specs += [f"path:{n}" for n in range(1, top + 1)]
    specs += [f"complete:{n}" for n in range(1, top + 1)]
    if max_vertices >= 10:
        specs.append("petersen")
    return specs


def suite_rook(max_vertices: int | None, seed: int) -> list[Check]:
    return _family_checks(rook_specs(max_vertices or 16), (AVOID, ACHIEVE))


def suite_grid(max_vertices: int | None, seed: int) -> list[Check]:
    return _family_checks(grid_specs(max_vertices or 16), (AVOID, ACHIEVE))


def suite_cylinder(max_vertices: int | None, seed: int) -> list[Check]:
    return _family_checks(cylinder_specs(max_vertices or 14), (AVOID, ACHIEVE))


def suite_multipartite(max_vertices: int | None, seed: int) -> list[Check]:
    return _family_checks(multipartite_specs(max_vertices or 12), (AVOID, ACHIEVE))


def suite_wheel(max_vertices: int | None, seed: int) -> list[Check]:
    return _family_checks(wheel_specs(max_vertices or 11), (AVOID,))


def suite_cycle(max_vertices: int | None, seed: int) -> list[Check]:
    return _family_checks(small_family_specs(max_vertices or 12), (AVOID, ACHIEVE))


def suite_lex(max_vertices: int | None, seed: int) -> list[Check]:
    cap = max_vertices or 16
    out = []
    for nb in range(1, 6):
        for base in connected_graphs_up_to_iso(nb):
            for k in (1, 2, 3):
                if nb * k <= cap:
                    edges = tuple(base.edges())
                    out.append(Check(("lex", nb, edges, k), check_lex, (nb, edges, k)))
    return out


def _random_h(rng: random.Random, lo: int, hi: int) -> Graph:
    return random_graph(rng.randint(lo, hi), rng)


def suite_reductions(max_vertices: int | None, seed: int) -> list[Check]:
    cap = max_vertices or 64
    out = []
    rng = random.Random(f"reductions:R1:{seed}")
    hs = [g for n in range(1, 5) for g in all_labeled_graphs(n)]
    hs += [_random_h(rng, 5, 6) for _ in range(50)]
    for i, h in enumerate(hs):
        if 2 * h.n + 1 <= cap:
            out.append(Check(("R1", i), check_reduction, ("R1", h.n, tuple(h.edges()))))
    rng = random.Random(f"reductions:R2:{seed}")
    hs = [g for n in range(1, 4) for g in all_labeled_graphs(n)]
    hs += [_random_h(rng, 4, 5) for _ in range(30)]
    for i, h in enumerate(hs):
        if 6 * h.n + 1 <= cap:
            out.append(Check(("R2", i), check_reduction, ("R2", h.n, tuple(h.edges()))))
    return out


LITERAL_UNIVERSE = ((1, True), (1, False), (2, True), (2, False))


def exhaustive_formulas() -> list[QBF]:
    """All normalized n=2 formulas with at most three clauses over x1, x2."""
    clause_pool = [
        tuple(lit for i, lit in enumerate(LITERAL_UNIVERSE) if mask >> i & 1)
        for mask in range(1, 1 << len(LITERAL_UNIVERSE))
    ]
    out = []
    for extra in range(3):
        for rest in itertools.product(clause_pool, repeat=extra):
            out.append(QBF(2, (TAUTOLOGY,) + rest))
    return out


def random_formulas(seed: int, count: int = 200) -> list[QBF]:
    rng = random.Random(f"tqbf:{seed}")
    out = []
    for _ in range(count):
        n = rng.randint(1, 4)
        m = rng.randint(1, 4)
        clauses = []
        for _ in range(m):
            chosen = rng.sample(range(1, n + 1), rng.randint(1, min(3, n)))
            clauses.append(tuple((v, rng.random() < 0.5) for v in sorted(chosen)))
        out.append(QBF(n, tuple(clauses)))
    return out


def suite_tqbf(max_vertices: int | None, seed: int) -> list[Check]:
    cap = max_vertices or 64
    out = [Check(("tqbf", 0, 0), check_worked_example)]
    for kind, formulas in ((1, exhaustive_formulas()), (2, random_formulas(seed))):
        for i, f in enumerate(formulas):
            nf = tqbf_normalize(f)
            if 2 * nf.num_vars + nf.num_clauses + nf.num_vars * (nf.num_vars + 1) <= cap:
                out.append(Check(("tqbf", kind, i), check_tqbf, (f.num_vars, f.clauses)))
    return out


def suite_properties(max_vertices: int | None, seed: int) -> list[Check]:
    cap = max_vertices or 20
    out = []
    for chunk in range(10):
        tag = f"gp:{seed}:{chunk}"
        out.append(Check(("p1", chunk), check_gp_characterization, (tag, 100)))
        out.append(Check(("p2", chunk), check_playable_routes, (tag, 100)))
    out.append(Check(("p3",), check_cartesian_metric, (f"cart:{seed}", 60, cap)))
    out.append(Check(("p4",), check_layer_lemma, (f"layer:{seed}", 100, cap)))
    out.append(Check(("p5",), check_bipartite_lemma, (f"bip:{seed}", 200)))
    specs = (rook_specs() + grid_specs() + cylinder_specs() + multipartite_specs()
             + wheel_specs() + small_family_specs())
    for spec in specs:
        out.append(Check(("p6", spec), check_shortcut_agreement, (spec,)))
    out.append(Check(("p7",), check_duality, (f"dual:{seed}", 100)))
    for spec in ("petersen", "cycle:6", "rook:3,4", "grid:3,3"):
        for kind in (AVOID, ACHIEVE):
            out.append(Check(("p8", spec, kind.label), check_pv_replay, (spec, kind.label)))
    return out


SUITES: dict[str, Callable[[int | None, int], list[Check]]] = {
    "rook": suite_rook,
    "grid": suite_grid,
    "cylinder": suite_cylinder,
    "multipartite": suite_multipartite,
    "wheel": suite_wheel,
    "cycle": suite_cycle,
    "lex": suite_lex,
    "reductions": suite_reductions,
    "tqbf": suite_tqbf,
    "properties": suite_properties,
}


def build_suite(name: str, max_vertices: int | None = None, seed: int = 0) -> list[Check]:
    if name == "all":
        checks = []
        for sub, builder in SUITES.items():
            checks += [Check((sub,) + c.key, c.func, c.args) for c in builder(max_vertices, seed)]
        return checks
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](max_vertices, seed)


def _run_check(check: Check) -> Outcome:
    return check.run()


def run_checks(checks: Sequence[Check], jobs: int | None = None) -> list[Outcome]:
    ordered = sorted(checks, key=lambda c: repr(c.key))
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(ordered) <= 1:
        return [c.run() for c in ordered]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_check, ordered, chunksize=4))
