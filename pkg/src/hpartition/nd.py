"""Neighborhood-diversity decomposition: twin classes and the type graph."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

CLIQUE = "clique"
INDEPENDENT = "independent"
SINGLETON = "singleton"


@dataclass(frozen=True)
class NDType:
    vertices: frozenset[int]
    kind: str  # clique | independent | singleton

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class NDDecomposition:
    types: tuple[NDType, ...]
    type_graph: Graph
    type_of: tuple[int, ...]

    @property
    def nd(self) -> int:
        return len(self.types)


def same_type(g: Graph, u: int, v: int) -> bool:
    """N(u) \\ {v} == N(v) \\ {u}."""
    return (g.mask[u] & ~(1 << v)) == (g.mask[v] & ~(1 << u))


def nd_decompose(g: Graph) -> NDDecomposition:
    # False twins share open neighbourhoods, true twins closed ones; a vertex
    # with a twin of one kind cannot have a twin of the other kind.
    by_open: dict[int, list[int]] = {}
    by_closed: dict[int, list[int]] = {}
    for v in range(g.n):
        by_open.setdefault(g.mask[v], []).append(v)
        by_closed.setdefault(g.mask[v] | (1 << v), []).append(v)
    groups: dict[int, tuple[list[int], str]] = {}
    for members in by_open.values():
        if len(members) > 1:
            groups[members[0]] = (members, INDEPENDENT)
    for members in by_closed.values():
        if len(members) > 1:
            groups[members[0]] = (members, CLIQUE)
    seen = set()
    for members, _ in groups.values():
        seen.update(members)
    for v in range(g.n):
        if v not in seen:
            groups[v] = ([v], SINGLETON)
    types = tuple(NDType(frozenset(members), kind)
                  for _, (members, kind) in sorted(groups.items()))
    type_of = [0] * g.n
    for i, t in enumerate(types):
        for v in t.vertices:
            type_of[v] = i
    reps = [min(t.vertices) for t in types]
    tg = Graph(len(types), ((i, j) for i in range(len(types)) for j in range(i + 1, len(types))
                            if g.has_edge(reps[i], reps[j])))
    return NDDecomposition(types, tg, tuple(type_of))


def neighborhood_diversity(g: Graph) -> int:
    return nd_decompose(g).nd


def is_prime(g: Graph) -> bool:
    """True iff every vertex is its own neighborhood type."""
    return nd_decompose(g).nd == g.n


def expand(d: NDDecomposition) -> Graph:
    """Rebuild the host graph from a decomposition."""
    n = sum(t.size for t in d.types)
    edges = []
    for t in d.types:
        if t.kind == CLIQUE:
            vs = sorted(t.vertices)
            edges.extend((a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
    for i, j in d.type_graph.edges:
        edges.extend((a, b) for a in d.types[i].vertices for b in d.types[j].vertices)
    return Graph(n, edges)
