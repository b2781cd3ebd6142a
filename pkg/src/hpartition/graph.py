"""Simple undirected graphs on dense integer vertices, plus isomorphism tools.

Vertices are always ``0..n-1``.  Every graph keeps its adjacency both as
frozensets and as integer bitmasks; the bitmasks drive the inner loops of
the copy searches.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

ISO_SIZE_LIMIT = 12


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("n", "edges", "adj", "mask")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            norm.add((u, v) if u < v else (v, u))
        adj = [set() for _ in range(n)]
        mask = [0] * n
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
            mask[u] |= 1 << v
            mask[v] |= 1 << u
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "mask", tuple(mask))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    def __len__(self):
        return self.n

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.mask[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def complement(self) -> Graph:
        return Graph(self.n, ((u, v) for u in range(self.n) for v in range(u + 1, self.n)
                              if not self.has_edge(u, v)))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("relabeling must be a permutation of the vertices")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    # -- constructors ------------------------------------------------------

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n)

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("cycles need at least 3 vertices")
        return cls(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> Graph:
        return cls(a + b, ((i, a + j) for i in range(a) for j in range(b)))

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.complete_bipartite(1, leaves)


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union; returns the graph and the vertex offset of each operand."""
    offsets = []
    edges = []
    total = 0
    for g in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in g.edges)
        total += g.n
    return Graph(total, edges), offsets


_PATTERN_RE = re.compile(r"^(?:(?P<mult>\d+)\s*[x*·]?\s*)?(?P<kind>[KPC])(?P<k>\d+)$")


def named_graph(name: str) -> Graph:
    """Expand shorthands ``K<k>``, ``P<k>``, ``C<k>`` and ``<m>K<k>`` (e.g. ``2K1``).

    ``P<k>`` is the path on k vertices, so ``P2`` is ``K2``.
    """
    match = _PATTERN_RE.match(name.strip())
    if not match:
        raise ValueError(f"unknown pattern shorthand {name!r}")
    k = int(match["k"])
    mult = int(match["mult"]) if match["mult"] else 1
    if k < 1 or mult < 1:
        raise ValueError(f"pattern {name!r} must have at least one vertex")
    base = {"K": Graph.complete, "P": Graph.path, "C": Graph.cycle}[match["kind"]](k)
    if mult == 1:
        return base
    return disjoint_union([base] * mult)[0]


# -- basic queries ----------------------------------------------------------


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph induced by ``s``, relabeled ``0..|s|-1`` by ascending original id."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} is not in the graph")
    index = {v: i for i, v in enumerate(verts)}
    return Graph(len(verts), ((index[u], index[v]) for u in verts for v in g.adj[u]
                              if v in index and u < v))


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def components_mask(g: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``g[within]`` as bitmasks."""
    if within is None:
        within = (1 << g.n) - 1
    comps = []
    rest = within
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.mask[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def components(g: Graph) -> list[frozenset[int]]:
    return [frozenset(bits(c)) for c in components_mask(g)]


def is_connected(g: Graph) -> bool:
    return len(components_mask(g)) <= 1


def distances(g: Graph) -> list[list[float]]:
    """All-pairs shortest path lengths; ``math.inf`` across components."""
    table = []
    for s in range(g.n):
        dist = [math.inf] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if dist[w] == math.inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        table.append(dist)
    return table


def diameter(g: Graph) -> float:
    if g.n == 0:
        return 0
    return max(max(row) for row in distances(g))


@dataclass(frozen=True)
class GraphQueries:
    complement: Graph
    components: list[frozenset[int]]
    is_connected: bool
    distances: list[list[float]]


def graph_queries(g: Graph) -> GraphQueries:
    comps = components(g)
    return GraphQueries(g.complement(), comps, len(comps) <= 1, distances(g))


# -- isomorphism ------------------------------------------------------------


def _invariants(g: Graph) -> list[tuple]:
    degs = [len(a) for a in g.adj]
    return [(degs[v], tuple(sorted(degs[u] for u in g.adj[v]))) for v in range(g.n)]


def _search_order(g: Graph) -> list[int]:
    # Greedy: next vertex has the most already-ordered neighbours, then highest degree.
    order: list[int] = []
    placed = set()
    while len(order) < g.n:
        best = max((v for v in range(g.n) if v not in placed),
                   key=lambda v: (len(g.adj[v] & placed), g.degree(v), -v))
        order.append(best)
        placed.add(best)
    return order


def isomorphisms(g1: Graph, g2: Graph, limit: int = ISO_SIZE_LIMIT) -> Iterator[tuple[int, ...]]:
    """Yield every isomorphism ``f`` from g1 to g2 as a tuple with ``f[v]`` the image of v."""
    if max(g1.n, g2.n) > limit:
        raise ValueError(f"isomorphism search is limited to {limit} vertices")
    if g1.n != g2.n or g1.m != g2.m:
        return
    inv1, inv2 = _invariants(g1), _invariants(g2)
    if sorted(inv1) != sorted(inv2):
        return
    n = g1.n
    order = _search_order(g1)
    cands = [[w for w in range(n) if inv2[w] == inv1[v]] for v in range(n)]
    earlier = [[(order[j], g1.has_edge(order[i], order[j])) for j in range(i)] for i in range(n)]
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield tuple(image)
            return
        v = order[i]
        for w in cands[v]:
            if used[w]:
                continue
            if all(g2.has_edge(w, image[u]) == adjacent for u, adjacent in earlier[i]):
                image[v] = w
                used[w] = True
                yield from extend(i + 1)
                used[w] = False
        image[v] = -1

    yield from extend(0)


def is_isomorphic(g1: Graph, g2: Graph, limit: int = ISO_SIZE_LIMIT) -> bool:
    return next(isomorphisms(g1, g2, limit), None) is not None


def automorphisms(g: Graph, limit: int = ISO_SIZE_LIMIT) -> list[tuple[int, ...]]:
    """The full automorphism group, identity first."""
    auts = list(isomorphisms(g, g, limit))
    ident = tuple(range(g.n))
    auts.sort(key=lambda p: (p != ident, p))
    return auts
