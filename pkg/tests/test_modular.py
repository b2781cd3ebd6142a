import random
from itertools import combinations

import networkx as nx
import pytest
from conftest import graphs
from hypothesis import given

from hpartition.generators import random_substitution
from hpartition.graph import Graph, disjoint_union, named_graph
from hpartition.modular import (
    JoinNode,
    Leaf,
    PrimeNode,
    UnionNode,
    evaluate,
    is_module_prime,
    leaves,
    modular_decompose,
    modular_width,
)
from hpartition.nd import is_prime, neighborhood_diversity


def is_module(g: Graph, s: set[int]) -> bool:
    return all(len({g.has_edge(x, v) for v in s}) == 1 for x in range(g.n) if x not in s)


def has_nontrivial_module(g: Graph) -> bool:
    return any(is_module(g, set(s)) for k in range(2, g.n) for s in combinations(range(g.n), k))


def atlas():
    for nxg in nx.graph_atlas_g():
        if nxg.number_of_nodes():
            yield Graph(nxg.number_of_nodes(), nxg.edges())


def test_two_triangles():
    t = modular_decompose(named_graph("2K3"))
    assert isinstance(t, UnionNode) and len(t.children) == 2
    for c in t.children:
        assert isinstance(c, JoinNode) and all(isinstance(x, Leaf) for x in c.children)


def test_p4_is_a_prime_node():
    assert not has_nontrivial_module(Graph.path(4))
    t = modular_decompose(Graph.path(4))
    assert isinstance(t, PrimeNode) and len(t.children) == 4
    assert modular_width(t) == 4


def test_width_conventions():
    assert modular_width(modular_decompose(Graph.complete(4))) == 2
    assert modular_width(modular_decompose(named_graph("3K2"))) == 2
    assert modular_width(modular_decompose(Graph.complete(1))) == 1
    assert modular_decompose(Graph.complete(1)) == Leaf(0)


def test_evaluate_examples():
    assert evaluate(UnionNode((Leaf(0), Leaf(1)))) == Graph.empty(2)
    assert evaluate(JoinNode((Leaf(0), Leaf(1)))) == Graph.complete(2)
    tree = PrimeNode(Graph.path(4), (JoinNode((Leaf(0), Leaf(1))), Leaf(2), Leaf(3), Leaf(4)))
    # K2 substituted for the first path vertex: block {0,1} joined to 2, then 2-3-4.
    assert evaluate(tree) == Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])


def test_evaluate_rejects_bad_leaves():
    with pytest.raises(ValueError):
        evaluate(UnionNode((Leaf(0), Leaf(2))))


def test_round_trip_all_small_graphs():
    for g in atlas():
        t = modular_decompose(g)
        assert sorted(leaves(t)) == list(range(g.n))
        assert evaluate(t) == g


def test_module_primality_matches_brute_force():
    for g in atlas():
        assert is_module_prime(g) == (g.n <= 2 or not has_nontrivial_module(g))


def test_gem_is_nd_prime_but_has_a_module():
    gem = Graph(5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
    assert is_prime(gem)
    assert not is_module_prime(gem)


def _prime_templates(t):
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, PrimeNode):
            yield node.template
        if not isinstance(node, Leaf):
            stack.extend(node.children)


@given(graphs(min_n=1, max_n=12))
def test_round_trip_and_prime_templates(g):
    t = modular_decompose(g)
    assert evaluate(t) == g
    for tmpl in _prime_templates(t):
        assert is_prime(tmpl) and tmpl.n >= 4


@given(graphs(min_n=1, max_n=12))
def test_width_bounded_by_diversity(g):
    # Union and join count as width 2, so cliques and edgeless graphs give mw = 2 > nd = 1.
    assert modular_width(modular_decompose(g)) <= max(neighborhood_diversity(g), 2)


def test_round_trip_random_up_to_30():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(8, 30)
        if rng.random() < 0.5:
            g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35])
        else:
            g = random_substitution(n, 6, rng)
        assert evaluate(modular_decompose(g)) == g


def test_disjoint_union_width_bound():
    rng = random.Random(9)
    for _ in range(100):
        parts = [random_substitution(rng.randint(1, 8), 5, rng) for _ in range(rng.randint(1, 4))]
        union, _ = disjoint_union(parts)
        bound = max(max(modular_width(modular_decompose(p)), 2) for p in parts)
        assert modular_width(modular_decompose(union)) <= bound
