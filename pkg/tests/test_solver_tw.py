import random
from itertools import permutations

import pytest
from conftest import graphs
from hypothesis import given
from hypothesis import strategies as st

from hpartition.generators import random_partial_ktree
from hpartition.graph import Graph, named_graph
from hpartition.oracle import solve_oracle
from hpartition.pattern import BudgetExhausted, PatternInfo, verify_certificate
from hpartition.solver_tw import PatternDisconnected, solve_tw
from hpartition.treedecomp import (
    TreeDecomposition,
    make_nice,
    ordering_width,
    tree_decompose,
)

CONNECTED = ["K2", "K3", "P3", "P4", "C5"]


def random_tree(n: int, rng: random.Random) -> Graph:
    return Graph(n, [(v, rng.randrange(v)) for v in range(1, n)])


@pytest.mark.parametrize("mode", ["heuristic", "exact"])
def test_width_examples(mode):
    rng = random.Random(1)
    for n in range(2, 12):
        assert tree_decompose(random_tree(n, rng), mode).width == 1
    assert tree_decompose(Graph.cycle(6), mode).width == 2
    assert tree_decompose(Graph.complete(5), mode).width == 4


@given(graphs(min_n=1, max_n=6))
def test_exact_width_is_minimum_over_orderings(g):
    best = min(ordering_width(g, list(p)) for p in permutations(range(g.n)))
    td = tree_decompose(g, "exact")
    assert td.width == best and td.is_valid(g)


@given(graphs(max_n=12))
def test_decompositions_are_valid(g):
    assert tree_decompose(g, "heuristic").is_valid(g)


def test_invalid_decomposition_detected():
    g = Graph.cycle(4)
    td = TreeDecomposition((frozenset({0, 1, 2}), frozenset({2, 3})), ((0, 1),))
    assert not td.is_valid(g)  # edge 3-0 is in no bag


def test_exact_budget():
    g = Graph(14, [(u, v) for u in range(14) for v in range(u + 1, 14) if (u + 2 * v) % 5 < 2])
    with pytest.raises(BudgetExhausted):
        tree_decompose(g, "exact", budget=5)


@given(graphs(min_n=1, max_n=10))
def test_nice_decomposition_shape(g):
    td = tree_decompose(g, "heuristic")
    nice = make_nice(td)
    assert not nice[-1].bag
    seen = set()
    for i, node in enumerate(nice):
        assert all(c < i for c in node.children)
        if node.kind == "leaf":
            assert not node.bag and not node.children
        elif node.kind == "introduce":
            (c,) = node.children
            assert node.bag == nice[c].bag | {node.vertex} and node.vertex not in nice[c].bag
        elif node.kind == "forget":
            (c,) = node.children
            assert node.bag == nice[c].bag - {node.vertex} and node.vertex in nice[c].bag
            seen.add(node.vertex)
        else:
            a, b = node.children
            assert node.bag == nice[a].bag == nice[b].bag
        assert len(node.bag) <= td.width + 1
    assert seen == set(range(g.n))


def test_examples():
    assert solve_tw(Graph.cycle(6), "K2").yes
    assert not solve_tw(Graph.star(3), "K2").yes
    out = solve_tw(named_graph("2K3"), "K3")
    assert out.yes and verify_certificate(named_graph("2K3"), PatternInfo.of("K3"), out.certificate)


def test_disconnected_pattern_is_refused():
    with pytest.raises(PatternDisconnected):
        solve_tw(Graph.empty(4), "2K1")


def test_state_budget():
    g = Graph.complete(8)
    with pytest.raises(BudgetExhausted):
        solve_tw(g, "K2", state_budget=3)


@given(graphs(max_n=7), st.sampled_from(CONNECTED))
def test_agrees_with_oracle_for_both_decompositions(g, pattern):
    info = PatternInfo.of(pattern)
    expected = solve_oracle(g, info).yes
    for mode in ("heuristic", "exact"):
        out = solve_tw(g, info, td=tree_decompose(g, mode))
        assert out.yes == expected
        if out.yes:
            assert verify_certificate(g, info, out.certificate)


def test_partial_two_trees():
    rng = random.Random(8)
    for _ in range(150):
        pattern = PatternInfo.of(rng.choice(["K2", "P3", "K3", "P4"]))
        n = pattern.size * rng.randint(1, 4)
        g = random_partial_ktree(n, 2, rng.uniform(0.6, 1.0), rng)
        out = solve_tw(g, pattern)
        assert out.yes == solve_oracle(g, pattern).yes
        if out.yes:
            assert verify_certificate(g, pattern, out.certificate)


def test_random_hosts_up_to_14():
    rng = random.Random(13)
    for _ in range(120):
        pattern = PatternInfo.of(rng.choice(CONNECTED))
        n = pattern.size * rng.randint(1, 14 // pattern.size)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
        out = solve_tw(g, pattern)
        assert out.yes == solve_oracle(g, pattern).yes
