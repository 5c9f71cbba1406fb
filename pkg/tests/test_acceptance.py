"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line (also collected
into the pytest terminal summary).  Criteria 1-6 state the closed-form
predicate literally here and compare it with exhaustive search; 7-11 use the
cross-validation checks from :mod:`gpgames.verify`.  All comparisons are exact.

Run ``python tests/test_acceptance.py`` to get just the summary lines.
"""

from __future__ import annotations

import time

from gpgames import families as fam
from gpgames import verify
from gpgames.engine import GameKind, Player, solve

AVOID, ACHIEVE = GameKind.GP_AVOIDANCE, GameKind.GP_ACHIEVEMENT
A, B = Player.FIRST, Player.SECOND
LIMIT = 64

RESULTS: dict[int, str] = {}


def _record(k: int, title: str, failures: list[str], total: int, started: float) -> None:
    status = "PASS" if not failures else "FAIL"
    secs = time.perf_counter() - started
    line = f"ACCEPTANCE {k:>2} {status}  {title}: {total - len(failures)}/{total} exact ({secs:.1f}s)"
    if failures:
        line += "; first mismatches: " + "; ".join(failures[:4])
    RESULTS[k] = line
    print(line)
    assert not failures, line


def _winner(g, kind) -> Player:
    return solve(g, kind, max_vertices=LIMIT).winner


def _expect(failures: list[str], label: str, got: Player, want: Player) -> None:
    if got is not want:
        failures.append(f"{label}: solver {got.value}, predicate {want.value}")


def test_criterion_01_rook():
    t0, failures, total = time.perf_counter(), [], 0
    for n in range(2, 17):
        for m in range(n, 17):
            if n * m > 16:
                continue
            g, _ = fam.rook(n, m)
            b_avoid = (n == 2 and m % 2 == 1) or (n == 3 and m % 2 == 0)
            a_achieve = n % 2 == 1 and m % 2 == 1
            _expect(failures, f"K{n}xK{m} avoid", _winner(g, AVOID), B if b_avoid else A)
            _expect(failures, f"K{n}xK{m} achieve", _winner(g, ACHIEVE), A if a_achieve else B)
            total += 2
    _record(1, "rook's graphs K_n x K_m, n*m <= 16", failures, total, t0)


def test_criterion_02_grid():
    t0, failures, total = time.perf_counter(), [], 0
    for n in range(3, 17):
        for m in range(2, 17):
            if n * m <= 16:
                _expect(failures, f"P{n}xP{m} avoid", _winner(fam.grid(n, m)[0], AVOID), B)
                total += 1
    _record(2, "grids P_n x P_m avoidance, n*m <= 16", failures, total, t0)


def test_criterion_03_cylinder():
    t0, failures, total = time.perf_counter(), [], 0
    for n in range(3, 8):
        for m in range(2, 15):
            if n * m <= 14:
                want = B if n % 2 == 1 else A
                _expect(failures, f"C{n}xP{m} avoid", _winner(fam.cylinder(n, m)[0], AVOID), want)
                total += 1
    _record(3, "cylinders C_n x P_m avoidance, n*m <= 14", failures, total, t0)


def _partitions(total: int, smallest: int = 2):
    for first in range(smallest, total + 1):
        yield (first,)
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def test_criterion_04_multipartite():
    t0, failures, total = time.perf_counter(), [], 0
    for parts in sorted(set(_partitions(12))):
        if len(parts) < 2:
            continue
        g = fam.complete_multipartite(parts)
        a_avoid = len(parts) % 2 == 0 and any(p % 2 == 0 for p in parts)
        label = "K_" + ",".join(map(str, parts))
        _expect(failures, f"{label} avoid", _winner(g, AVOID), A if a_avoid else B)
        _expect(failures, f"{label} achieve", _winner(g, ACHIEVE), B if a_avoid else A)
        total += 2
    _record(4, "complete multipartite, parts >= 2, total <= 12", failures, total, t0)


def test_criterion_05_wheel():
    t0, failures, total = time.perf_counter(), [], 0
    for n in range(1, 4):
        for m in range(3, 9):
            if n + m <= 11:
                want = B if m >= 4 else A
                _expect(failures, f"W{n},{m} avoid", _winner(fam.generalized_wheel(n, m), AVOID), want)
                total += 1
    _record(5, "generalized wheels W_{n,m} avoidance", failures, total, t0)


def test_criterion_06_small_families():
    t0, failures, total = time.perf_counter(), [], 0
    for n in range(3, 13):
        g = fam.cycle(n)
        _expect(failures, f"C{n} avoid", _winner(g, AVOID), B if n != 4 else A)
        _expect(failures, f"C{n} achieve", _winner(g, ACHIEVE), B if n % 2 == 0 else A)
        total += 2
    for n in range(1, 13):
        g = fam.path(n)
        # one vertex: a single move; otherwise the game ends after two moves
        _expect(failures, f"P{n} avoid", _winner(g, AVOID), B if n == 1 else A)
        _expect(failures, f"P{n} achieve", _winner(g, ACHIEVE), A if n == 1 else B)
        k = fam.complete(n)
        # every subset is gp, so exactly n moves are played
        _expect(failures, f"K{n} avoid", _winner(k, AVOID), A if n % 2 == 0 else B)
        _expect(failures, f"K{n} achieve", _winner(k, ACHIEVE), A if n % 2 == 1 else B)
        total += 4
    p = fam.petersen()
    _expect(failures, "Petersen avoid", _winner(p, AVOID), A)
    _expect(failures, "Petersen achieve", _winner(p, ACHIEVE), B)
    total += 2
    _record(6, "cycles, paths, complete graphs, Petersen", failures, total, t0)


def _run_checks(checks) -> tuple[list[str], int]:
    outcomes = [c.run() for c in checks]
    failures = [f"{o.report.instance} ({o.detail})" for o in outcomes if not o.ok]
    return failures, len(outcomes)


def test_criterion_07_lexicographic():
    t0 = time.perf_counter()
    checks = verify.suite_lex(16, 0)
    assert {c.args[0] for c in checks} == {1, 2, 3, 4, 5}
    failures, total = _run_checks(checks)
    _record(7, "G o K_n against the base-graph rule, bases <= 5 vertices", failures, total, t0)


def test_criterion_08_reduction_clique():
    t0 = time.perf_counter()
    checks = [c for c in verify.suite_reductions(None, 0) if c.args[0] == "R1"]
    assert len(checks) == 1 + 2 + 8 + 64 + 50
    failures, total = _run_checks(checks)
    _record(8, "clique-forming -> gp-achievement (+ diameter <= 4)", failures, total, t0)


def test_criterion_09_reduction_misere_clique():
    t0 = time.perf_counter()
    checks = [c for c in verify.suite_reductions(None, 0) if c.args[0] == "R2"]
    assert len(checks) == 1 + 2 + 8 + 30
    failures, total = _run_checks(checks)
    _record(9, "misere clique-forming -> gp-avoidance (+ diameter <= 4)", failures, total, t0)


def test_criterion_10_tqbf():
    t0 = time.perf_counter()
    checks = verify.suite_tqbf(None, 0)
    assert len(checks) == 1 + 241 + 200
    failures, total = _run_checks(checks)
    _record(10, "TQBF -> misere Node Kayles (+ worked example is false)", failures, total, t0)


def test_criterion_11_properties():
    t0 = time.perf_counter()
    failures, total = _run_checks(verify.suite_properties(None, 0))
    _record(11, "property invariants (gp characterization, playable sets, products, duality)",
            failures, total, t0)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
