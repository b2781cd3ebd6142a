import random
from itertools import combinations

from conftest import graphs
from hypothesis import given

from hpartition.graph import Graph, named_graph
from hpartition.nd import (
    CLIQUE,
    INDEPENDENT,
    SINGLETON,
    expand,
    is_prime,
    nd_decompose,
    neighborhood_diversity,
)


def twins(g: Graph, u: int, v: int) -> bool:
    # Reference relation: N(u) - {v} equals N(v) - {u}.
    return set(g.adj[u]) - {v} == set(g.adj[v]) - {u}


def test_clique_is_one_type():
    d = nd_decompose(Graph.complete(5))
    assert d.nd == 1 and d.types[0].kind == CLIQUE
    assert d.type_graph == Graph.complete(1)


def test_p4_is_four_singletons():
    d = nd_decompose(Graph.path(4))
    assert [t.kind for t in d.types] == [SINGLETON] * 4
    assert d.type_graph == Graph.path(4)


def test_c4_types_by_brute_force():
    c4 = Graph.cycle(4)
    classes = []
    for v in range(4):
        for cls in classes:
            if twins(c4, v, cls[0]):
                cls.append(v)
                break
        else:
            classes.append([v])
    assert classes == [[0, 2], [1, 3]]
    d = nd_decompose(c4)
    assert [sorted(t.vertices) for t in d.types] == classes
    assert all(t.kind == INDEPENDENT for t in d.types)
    assert d.type_graph == Graph.complete(2)


def test_prime_examples():
    assert is_prime(Graph.cycle(5))
    assert not is_prime(Graph.complete(3))
    assert is_prime(Graph.complete(1))


def test_types_ordered_by_min_vertex():
    d = nd_decompose(Graph(5, [(0, 3), (1, 3), (2, 4)]))
    mins = [min(t.vertices) for t in d.types]
    assert mins == sorted(mins)


@given(graphs(max_n=10))
def test_twin_relation_is_an_equivalence(g):
    for u, v, w in combinations(range(g.n), 3):
        for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
            if twins(g, a, b) and twins(g, b, c):
                assert twins(g, a, c)


@given(graphs(max_n=10))
def test_types_are_exactly_twin_classes(g):
    d = nd_decompose(g)
    for u, v in combinations(range(g.n), 2):
        assert (d.type_of[u] == d.type_of[v]) == twins(g, u, v)


@given(graphs(max_n=10))
def test_reconstruction(g):
    assert expand(nd_decompose(g)) == g


@given(graphs(max_n=10))
def test_kinds_and_minimality(g):
    d = nd_decompose(g)
    for t in d.types:
        vs = sorted(t.vertices)
        assert (t.kind == SINGLETON) == (len(vs) == 1)
        if t.kind == CLIQUE:
            assert all(g.has_edge(a, b) for a, b in combinations(vs, 2))
        if t.kind == INDEPENDENT:
            assert not any(g.has_edge(a, b) for a, b in combinations(vs, 2))
    for i, j in combinations(range(d.nd), 2):
        merged = d.types[i].vertices | d.types[j].vertices
        assert not all(twins(g, a, b) for a, b in combinations(sorted(merged), 2))


def test_type_graph_alone_need_not_be_prime():
    # K1 + K2: a singleton and a clique type with equal type-graph neighbourhoods.
    d = nd_decompose(Graph(3, [(1, 2)]))
    assert d.nd == 2 and not is_prime(d.type_graph)


@given(graphs(max_n=10))
def test_type_graph_twins_differ_in_kind(g):
    # The type graph is prime once kinds are part of it: twin types in the
    # type graph are kept apart only by an incompatible kind.
    d = nd_decompose(g)
    tg = d.type_graph
    for i, j in combinations(range(d.nd), 2):
        if (tg.mask[i] & ~(1 << j)) != (tg.mask[j] & ~(1 << i)):
            continue
        kinds = {d.types[i].kind, d.types[j].kind}
        if tg.has_edge(i, j):
            assert INDEPENDENT in kinds
        else:
            assert CLIQUE in kinds


def test_prime_families():
    for k in range(4, 9):
        assert neighborhood_diversity(Graph.path(k)) == k
    for k in range(5, 10):
        assert neighborhood_diversity(Graph.cycle(k)) == k
    assert neighborhood_diversity(Graph.path(3)) == 2
    assert neighborhood_diversity(Graph.cycle(4)) == 2
    assert neighborhood_diversity(named_graph("3K2")) == 3


def test_random_larger_hosts_reconstruct():
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(10, 30)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
        assert expand(nd_decompose(g)) == g
