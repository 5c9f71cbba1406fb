import itertools
import random

import networkx as nx
import pytest

from conftest import nx_dist, ref_is_gp, to_nx
from gpgames import families as fam
from gpgames.graph import (
    CAPACITY,
    UNREACHABLE,
    CapacityError,
    Graph,
    GraphError,
    GraphFormatError,
    all_pairs_distances,
    basic_properties,
    bits,
    complement,
    format_graph,
    gp_number,
    interval,
    interval_closure,
    is_general_position,
    is_gp_by_characterization,
    parse_graph,
    playable_set,
    playable_set_definitional,
    to_mask,
    violated_condition,
)
from gpgames.graphgen import random_connected_graph, random_graph


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(CapacityError):
        Graph.from_edges(CAPACITY + 1, [])


def test_distances_on_path_and_identity():
    g = fam.path(3)
    dm = all_pairs_distances(g)
    assert dm(0, 2) == 2
    assert all(dm(u, u) == 0 for u in range(3))


def test_petersen_nonadjacent_pairs_at_distance_two():
    g = fam.petersen()
    dm = all_pairs_distances(g)
    for u, v in itertools.combinations(range(10), 2):
        if not g.has_edge(u, v):
            assert dm(u, v) == 2


def test_distances_match_networkx_on_random_graphs():
    rng = random.Random(11)
    for _ in range(40):
        g = random_graph(rng.randint(1, 12), rng, p=0.25)
        dm = all_pairs_distances(g)
        ref = nx_dist(to_nx(g))
        for u in range(g.n):
            for v in range(g.n):
                expected = ref[u].get(v, UNREACHABLE)
                assert dm(u, v) == expected


def test_interval_examples():
    p3 = fam.path(3)
    dm = all_pairs_distances(p3)
    assert interval(p3, dm, 0, 2) == 0b111
    assert interval(p3, dm, 1, 1) == 0b010
    c4 = fam.cycle(4)
    dm4 = all_pairs_distances(c4)
    assert interval(c4, dm4, 0, 2) == 0b1111


def test_interval_of_unreachable_pair_is_endpoints():
    g = fam.edgeless(3)
    dm = all_pairs_distances(g)
    assert interval(g, dm, 0, 2) == 0b101


def test_interval_matches_geodesic_enumeration():
    rng = random.Random(5)
    for _ in range(20):
        g = random_connected_graph(rng.randint(2, 9), rng)
        h = to_nx(g)
        dm = all_pairs_distances(g)
        for u, v in itertools.combinations(range(g.n), 2):
            on_paths = {x for p in nx.all_shortest_paths(h, u, v) for x in p}
            assert set(bits(interval(g, dm, u, v))) == on_paths


def test_interval_closure():
    p3 = fam.path(3)
    dm = all_pairs_distances(p3)
    assert interval_closure(p3, dm, 0b101) == 0b111
    assert interval_closure(p3, dm, 0) == 0
    c4 = fam.cycle(4)
    assert interval_closure(c4, all_pairs_distances(c4), 0b0101) == 0b1111


def test_general_position_examples():
    p = fam.path(5)
    dm = all_pairs_distances(p)
    assert all(is_general_position(p, dm, to_mask(s)) for s in itertools.combinations(range(5), 2))
    assert not is_general_position(p, dm, to_mask([0, 2, 4]))
    # a rim triangle plus one hub induces K_4
    w = fam.generalized_wheel(2, 3)
    assert is_general_position(w, all_pairs_distances(w), to_mask([0, 2, 3, 4]))


def test_characterization_examples():
    p = fam.path(4)
    dm = all_pairs_distances(p)
    assert is_gp_by_characterization(p, dm, to_mask([1, 2]))
    assert not is_gp_by_characterization(p, dm, to_mask([0, 1, 3]))
    with pytest.raises(GraphError):
        g = fam.edgeless(2)
        is_gp_by_characterization(g, all_pairs_distances(g), 1)


def test_characterization_agrees_with_definition_and_reference():
    rng = random.Random(2024)
    for _ in range(300):
        g = random_connected_graph(rng.randint(1, 10), rng, p=rng.random() * 0.5)
        dm = all_pairs_distances(g)
        ref = nx_dist(to_nx(g))
        s = to_mask(v for v in range(g.n) if rng.random() < 0.4)
        direct = is_general_position(g, dm, s)
        assert direct == ref_is_gp(ref, list(bits(s)))
        assert is_gp_by_characterization(g, dm, s) == direct


def test_playable_set_examples():
    p = fam.path(6)
    dm = all_pairs_distances(p)
    assert playable_set(p, dm, 1 << 2) == p.full & ~(1 << 2)
    assert playable_set(p, dm, to_mask([1, 4])) == 0
    g = fam.petersen()
    dmp = all_pairs_distances(g)
    for a in range(10):
        assert playable_set(g, dmp, 1 << a) == g.full & ~(1 << a)


def test_playable_set_requires_gp_input():
    p = fam.path(3)
    with pytest.raises(GraphError):
        playable_set(p, all_pairs_distances(p), 0b111)


def test_playable_set_routes_agree():
    rng = random.Random(7)
    for _ in range(150):
        g = random_connected_graph(rng.randint(2, 10), rng)
        dm = all_pairs_distances(g)
        s = 0
        for v in rng.sample(range(g.n), g.n):
            if is_general_position(g, dm, s | 1 << v) and rng.random() < 0.5:
                s |= 1 << v
        pl = playable_set(g, dm, s)
        assert pl == playable_set_definitional(g, dm, s)
        for x in range(g.n):
            if not s >> x & 1:
                assert (violated_condition(g, dm, s, x) is None) == bool(pl >> x & 1)


def test_violated_condition_messages():
    p = fam.path(5)
    dm = all_pairs_distances(p)
    assert violated_condition(p, dm, to_mask([0, 4]), 2).startswith("condition (i)")
    assert violated_condition(p, dm, to_mask([0, 2]), 4).startswith("condition (ii)")
    assert "already" in violated_condition(p, dm, 1, 0)


@pytest.mark.parametrize("n", range(2, 8))
def test_gp_number_paths(n):
    assert gp_number(fam.path(n)) == 2


def test_gp_number_known_values():
    assert gp_number(fam.cycle(4)) == 2
    for n in range(1, 8):
        assert gp_number(fam.complete(n)) == n


def test_gp_number_petersen_by_brute_force():
    g = fam.petersen()
    ref = nx_dist(to_nx(g))
    best = max(
        len(s) for r in range(11) for s in itertools.combinations(range(10), r) if ref_is_gp(ref, s)
    )
    assert gp_number(g) == best == 6


def test_gp_number_matches_brute_force_on_random_graphs():
    rng = random.Random(3)
    for _ in range(25):
        g = random_connected_graph(rng.randint(2, 8), rng)
        ref = nx_dist(to_nx(g))
        best = max(
            len(s)
            for r in range(g.n + 1)
            for s in itertools.combinations(range(g.n), r)
            if ref_is_gp(ref, s)
        )
        assert gp_number(g) == best


def test_basic_properties():
    c5 = basic_properties(fam.cycle(5))
    assert (c5.connected, c5.bipartite, c5.diameter) == (True, False, 2)
    two = basic_properties(fam.edgeless(2))
    assert not two.connected and two.diameter is UNREACHABLE
    assert basic_properties(fam.grid(3, 3)[0]).bipartite


def test_complement():
    assert complement(fam.complete(5)) == fam.edgeless(5)
    rng = random.Random(1)
    g = random_graph(8, rng)
    assert complement(complement(g)) == g
    c5c = complement(fam.cycle(5))
    assert nx.is_isomorphic(to_nx(c5c), nx.cycle_graph(5))


def test_parse_and_format_round_trip():
    text = "c a comment\np gp 4\ne 0 1\ne 1 0\ne 2 3\n"
    g = parse_graph(text)
    assert g.edges() == [(0, 1), (2, 3)]
    assert parse_graph(format_graph(g, ["x"])) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("p gp 3\ne 0 5\n", 2),
        ("e 0 1\np gp 3\n", 1),
        ("p gp 3\nq\n", 2),
        ("p gp 3\ne 1 1\n", 2),
        ("p gp x\n", 1),
        ("p gp 2\np gp 2\n", 2),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as exc:
        parse_graph(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_parse_rejects_oversized_header():
    with pytest.raises(CapacityError):
        parse_graph(f"p gp {CAPACITY + 1}\n")
