"""``gpgames`` command line: solve, oracle, reduce, verify and play.

Exit codes are a stable contract: 0 success, 1 verification disagreement,
2 input error, 3 resource limit.

Where a command takes a graph, ``--graph FILE`` and ``--family SPEC`` are
interchangeable; if both are given, ``--graph`` wins and a warning is printed.
Players are always named "A" (moves first) and "B" (moves second).
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Sequence, TextIO

from . import __version__
from .engine import GameKind, Player, Rule, Solver, SizeLimitError, solve, winner_of_terminal
from .families import FamilySpec, make_named, parse_family
from .graph import (
    CapacityError,
    Graph,
    GraphError,
    UNREACHABLE,
    basic_properties,
    bits,
    format_graph,
    parse_graph,
    read_graph,
    violated_condition,
)
from .oracles import normalize_for_oracle, oracle
from .reductions import (
    ReducedGraph,
    clique_to_gp_achievement,
    is_normalized,
    misere_clique_to_gp_avoidance,
    parse_qbf,
    tqbf_normalize,
    tqbf_to_misere_kayles,
)
from .report import Report
from .verify import SUITES, build_suite, run_checks

EXIT_OK, EXIT_DISAGREE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

PLAYER_LEGEND = "A = first mover, B = second mover"
GAME_LABELS = [k.label for k in GameKind]


class InputError(Exception):
    """Bad command-line input that argparse cannot catch on its own."""


def _load_graph(args: argparse.Namespace) -> tuple[Graph, str, FamilySpec | None]:
    if args.graph:
        if args.family:
            print(f"warning: --graph given, ignoring --family {args.family}", file=sys.stderr)
        return read_graph(args.graph), args.graph, None
    if args.family:
        spec = parse_family(args.family)
        g, _ = make_named(spec)
        return g, args.family, spec
    raise InputError("one of --graph or --family is required")


def _emit_report(report: Report, as_json: bool, out: TextIO, show_pv: bool = True) -> None:
    if as_json:
        print(report.to_json(), file=out)
        return
    print(f"instance: {report.instance}", file=out)
    print(f"game: {report.game}", file=out)
    print(f"winner: {report.winner}  ({PLAYER_LEGEND})", file=out)
    if report.theorem_tag:
        print(f"theorem: {report.theorem_tag}", file=out)
    if report.agreement is not None:
        print(f"agreement: {'yes' if report.agreement else 'NO'}", file=out)
    print(f"nodes: {report.nodes}  time: {report.elapsed_ms} ms", file=out)
    if show_pv:
        print("pv: " + (" ".join(map(str, report.pv)) or "(empty)"), file=out)


# -- solve ----------------------------------------------------------------------

def cmd_solve(args: argparse.Namespace) -> int:
    g, name, _ = _load_graph(args)
    kind = GameKind.from_label(args.game)
    start = time.perf_counter()
    result = solve(g, kind, max_vertices=args.max_vertices)
    ms = int((time.perf_counter() - start) * 1000)
    report = Report(name, kind.label, result.winner.value, result.nodes_expanded, ms,
                    result.principal_variation if args.strategy else [])
    _emit_report(report, args.json, sys.stdout, show_pv=args.strategy)
    return EXIT_OK


# -- oracle ---------------------------------------------------------------------

def cmd_oracle(args: argparse.Namespace) -> int:
    spec = parse_family(args.family)
    kind = GameKind.from_label(args.game)
    verdict = oracle(normalize_for_oracle(spec), kind)
    if verdict.supported:
        report = Report(args.family, kind.label, verdict.winner.value, theorem_tag=verdict.theorem_tag)
    elif args.fallback == "solve":
        g, _ = make_named(spec)
        start = time.perf_counter()
        result = solve(g, kind, max_vertices=args.max_vertices)
        ms = int((time.perf_counter() - start) * 1000)
        report = Report(args.family, kind.label, result.winner.value, result.nodes_expanded, ms,
                        theorem_tag=f"searched ({verdict.theorem_tag})")
    else:
        print(f"no closed form: {verdict.theorem_tag}", file=sys.stderr)
        return EXIT_INPUT
    _emit_report(report, args.json, sys.stdout, show_pv=False)
    return EXIT_OK


# -- reduce ---------------------------------------------------------------------

def cmd_reduce(args: argparse.Namespace) -> int:
    with open(args.input, encoding="utf-8") as fh:
        text = fh.read()
    comments: list[str]
    if args.source == "tqbf":
        f = parse_qbf(text)
        if not is_normalized(f):
            f = tqbf_normalize(f)
            print(f"normalized formula: {f.num_vars} variables, {f.num_clauses} clauses")
        reduced: ReducedGraph = tqbf_to_misere_kayles(f)
        comments = [f"misere Node Kayles instance from {args.input}"]
    else:
        h = parse_graph(text)
        if args.source == "clique":
            reduced = clique_to_gp_achievement(h)
            comments = [f"gp-achievement instance from clique-forming on {args.input}"]
        else:
            reduced = misere_clique_to_gp_avoidance(h)
            comments = [f"gp-avoidance instance from misere clique-forming on {args.input}"]
    g = reduced.graph
    with open(args.output + ".gp", "w", encoding="utf-8") as fh:
        fh.write(format_graph(g, comments))
    with open(args.output + ".labels", "w", encoding="utf-8") as fh:
        fh.write(reduced.labels_text())
    props = basic_properties(g)
    diameter = "unreachable" if props.diameter is UNREACHABLE else str(props.diameter)
    print(f"vertices: {g.n}")
    print(f"edges: {g.num_edges()}")
    print(f"diameter: {diameter}")
    print(f"wrote {args.output}.gp and {args.output}.labels")
    return EXIT_OK


# -- verify ---------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    checks = build_suite(args.suite, args.max_vertices, args.seed)
    outcomes = run_checks(checks, args.jobs)
    failures = [o for o in outcomes if not o.ok]
    if args.json:
        for o in outcomes:
            print(o.report.to_json())
    else:
        for o in outcomes:
            r = o.report
            mark = "ok  " if o.ok else "FAIL"
            print(f"{mark} {r.game:<14} {r.instance}  winner={r.winner}")
    for o in failures:
        print(f"counterexample: {o.report.instance} [{o.report.game}]: {o.detail}", file=sys.stderr)
    summary = f"{args.suite}: {len(outcomes) - len(failures)}/{len(outcomes)} agree"
    print(summary + (" -- PASS" if not failures else " -- FAIL"), file=sys.stderr)
    return EXIT_OK if not failures else EXIT_DISAGREE


# -- play -----------------------------------------------------------------------

def _illegal_reason(solver: Solver, s: int, x: int) -> str | None:
    g, kind = solver.g, solver.kind
    if not 0 <= x < g.n:
        return f"vertex {x} out of range 0..{g.n - 1}"
    if s >> x & 1:
        return f"vertex {x} was already selected"
    if kind.is_gp:
        return violated_condition(g, solver.dm, s, x)
    if kind.rule is Rule.INDEPENDENT:
        clash = g.adj[x] & s
        if clash:
            return f"vertex {x} is adjacent to selected vertex {next(bits(clash))}"
        return None
    missing = s & ~g.adj[x]
    if missing:
        return f"vertex {x} is not adjacent to selected vertex {next(bits(missing))}"
    return None


def cmd_play(args: argparse.Namespace, stdin: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    g, name, _ = _load_graph(args)
    kind = GameKind.from_label(args.game)
    solver = Solver(g, kind, max_vertices=args.max_vertices)
    human = Player(args.you)
    rule = "misere: the last mover loses" if kind.misere else "normal: the last mover wins"
    print(f"{name}: {kind.label} ({rule}); you are {human.value} ({PLAYER_LEGEND})")
    s = 0
    mover = Player.FIRST
    while True:
        moves = solver.moves(s)
        if not moves:
            winner = winner_of_terminal(kind, mover)
            print(f"no legal moves for {mover.value}; winner: {winner.value}"
                  + (" (you)" if winner is human else " (engine)"))
            return EXIT_OK
        if mover is human:
            print(f"selected: {sorted(bits(s))}  legal: {sorted(bits(moves))}")
            print("your move> ", end="", flush=True)
            line = stdin.readline()
            if not line:
                print("\naborted (end of input)")
                return EXIT_INPUT
            try:
                x = int(line.strip())
            except ValueError:
                print(f"not a vertex index: {line.strip()!r}")
                continue
            reason = _illegal_reason(solver, s, x)
            if reason:
                print(f"illegal: {reason}")
                continue
        else:
            x = solver.best_move(s)
            assert x is not None
            print(f"engine ({mover.value}) plays {x}")
        s |= 1 << x
        mover = mover.other


# -- argument parsing -------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", metavar="FILE", help="graph in 'p gp n' edge-list format")
    p.add_argument("--family", metavar="SPEC",
                   help="named family, e.g. cycle:5, rook:3,4, multi:2,2,3, petersen, lexk:FILE,2")
    p.add_argument("--game", choices=GAME_LABELS, default="gp-achieve")
    p.add_argument("--max-vertices", type=_positive, default=None,
                   help="override the solver size limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpgames",
        description="Exact solver and reductions for general-position, Node Kayles "
        "and clique-forming games.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide the winner of a game by exhaustive search")
    _add_graph_args(p)
    p.add_argument("--json", action="store_true", help="print a JSON report")
    p.add_argument("--strategy", action="store_true", help="print the principal variation")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="closed-form winner for a named family")
    p.add_argument("--family", metavar="SPEC", required=True)
    p.add_argument("--game", choices=GAME_LABELS, default="gp-avoid")
    p.add_argument("--json", action="store_true")
    p.add_argument("--fallback", choices=["none", "solve"], default="none",
                   help="search when no closed form applies")
    p.add_argument("--max-vertices", type=_positive, default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reduce", help="compile a source game into a target instance")
    p.add_argument("--from", dest="source", choices=["clique", "clique-misere", "tqbf"], required=True)
    p.add_argument("--input", metavar="FILE", required=True)
    p.add_argument("--output", metavar="PREFIX", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run a cross-validation sweep")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p.add_argument("--max-vertices", type=_positive, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="one JSON report per line")
    p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("play", help="play against the engine on standard input")
    _add_graph_args(p)
    p.add_argument("--you", choices=["A", "B"], default="A", help="which side you play")
    p.set_defaults(func=cmd_play)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SizeLimitError, CapacityError) as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (GraphError, InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RecursionError:
        print("error: resource limit: search too deep", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
