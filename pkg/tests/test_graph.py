import math
import random

import networkx as nx
import pytest
from conftest import graphs
from hypothesis import given
from hypothesis import strategies as st

from hpartition.graph import (
    Graph,
    automorphisms,
    components,
    diameter,
    disjoint_union,
    graph_queries,
    induced_subgraph,
    is_isomorphic,
    named_graph,
)
from hpartition.pattern import PartitionCertificate, PatternInfo, verify_certificate


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges)
    return out


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])
    with pytest.raises(ValueError):
        Graph(2, [(1, 1)])
    assert Graph(2, [(0, 1), (1, 0)]).m == 1


def test_named_graphs():
    assert named_graph("K3") == Graph.complete(3)
    assert named_graph("P4") == Graph.path(4)
    assert named_graph("C5") == Graph.cycle(5)
    assert named_graph("2K1") == Graph.empty(2)
    assert named_graph("2K3").m == 6
    with pytest.raises(ValueError):
        named_graph("X9")


def test_induced_subgraph_examples():
    assert induced_subgraph(Graph.complete(4), {0, 1, 2}) == Graph.complete(3)
    assert induced_subgraph(Graph.cycle(6), {0, 2, 4}) == Graph.empty(3)
    sub = induced_subgraph(Graph.path(5), {0, 1, 3, 4})
    assert sub == Graph(4, [(0, 1), (2, 3)])


def test_isomorphism_examples():
    assert not is_isomorphic(Graph.path(3), Graph.complete(3))
    assert is_isomorphic(Graph.cycle(4), Graph.complete_bipartite(2, 2))
    assert not is_isomorphic(Graph.cycle(6), named_graph("2K3"))


def test_automorphism_examples():
    assert len(automorphisms(Graph.complete(3))) == 6
    assert automorphisms(Graph.path(4)) == [(0, 1, 2, 3), (3, 2, 1, 0)]
    assert len(automorphisms(Graph.cycle(5))) == 10


def test_isomorphism_size_ceiling():
    big = Graph.path(13)
    with pytest.raises(ValueError):
        is_isomorphic(big, big)
    assert is_isomorphic(big, big, limit=13)


def test_verify_certificate_examples():
    c6 = Graph.cycle(6)
    assert verify_certificate(c6, PatternInfo.of("K2"), PartitionCertificate.from_lists([[0, 1], [2, 3], [4, 5]]))
    assert not verify_certificate(c6, PatternInfo.of("K3"), PartitionCertificate.from_lists([[0, 1, 2], [3, 4, 5]]))
    assert verify_certificate(Graph.cycle(4), PatternInfo.of("2K1"), PartitionCertificate.from_lists([[0, 2], [1, 3]]))


def test_verify_certificate_rejects_malformed():
    c6 = Graph.cycle(6)
    k2 = PatternInfo.of("K2")
    overlap = PartitionCertificate.from_lists([[0, 1], [1, 2], [4, 5]])
    missing = PartitionCertificate.from_lists([[0, 1], [2, 3]])
    outside = PartitionCertificate.from_lists([[0, 1], [2, 3], [4, 6]])
    assert not verify_certificate(c6, k2, overlap)
    assert not verify_certificate(c6, k2, missing)
    assert not verify_certificate(c6, k2, outside)


def test_queries_examples():
    q = graph_queries(Graph.complete(3))
    assert q.complement == Graph.empty(3)
    assert sorted(map(len, components(named_graph("2K3")))) == [3, 3]
    assert not graph_queries(named_graph("2K3")).is_connected
    assert math.isinf(diameter(named_graph("2K1")))
    assert diameter(Graph.cycle(5)) == 2


def test_disjoint_union_offsets():
    g, offsets = disjoint_union([Graph.path(4), Graph.cycle(5), Graph.complete(1)])
    assert offsets == [0, 4, 9]
    assert g.n == 10 and len(components(g)) == 3


@given(graphs())
def test_induced_on_everything_is_identity(g):
    assert induced_subgraph(g, range(g.n)) == g


@given(graphs())
def test_complement_is_an_involution(g):
    assert g.complement().complement() == g


@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_isomorphism_is_reflexive_and_symmetric(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert is_isomorphic(g, g)
    assert is_isomorphic(g, h) and is_isomorphic(h, g)


@given(graphs(max_n=8), graphs(max_n=8))
def test_isomorphism_matches_networkx(g1, g2):
    assert is_isomorphic(g1, g2) == nx.is_isomorphic(to_nx(g1), to_nx(g2))


def test_isomorphism_transitivity_spot_check():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 8)
        g = Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
        perms = [rng.sample(range(n), n) for _ in range(2)]
        a, b = g.relabel(perms[0]), g.relabel(perms[1])
        assert is_isomorphic(g, a) and is_isomorphic(a, b) and is_isomorphic(g, b)


@given(graphs(max_n=8))
def test_automorphisms_form_a_group_of_edge_maps(g):
    auts = automorphisms(g)
    assert auts[0] == tuple(range(g.n))
    assert math.factorial(g.n) % len(auts) == 0
    group = set(auts)
    for p in auts:
        assert all(g.has_edge(p[u], p[v]) for u, v in g.edges)
        inverse = [0] * g.n
        for v, w in enumerate(p):
            inverse[w] = v
        assert tuple(inverse) in group


@given(graphs(max_n=7))
def test_automorphism_count_matches_networkx(g):
    nxg = to_nx(g)
    count = sum(1 for _ in nx.algorithms.isomorphism.GraphMatcher(nxg, nxg).isomorphisms_iter())
    assert len(automorphisms(g)) == count


@given(graphs(min_n=1, max_n=8), st.integers(2, 3))
def test_wrong_total_size_never_verifies(g, k):
    classes = [list(range(i, min(i + k, g.n))) for i in range(0, g.n, k)]
    cert = PartitionCertificate.from_lists(classes)
    if g.n != k * len(classes):
        assert not verify_certificate(g, Graph.empty(k), cert)
