"""Instance construction: the 3D-matching gadget, disjoint-union composition,
planted Yes instances and random hosts.

Gadget wiring
-------------
The pattern is split into a triangle ``r, g, b`` and three parts
``V^red, V^green, V^blue`` with ``{c} ∪ V^c`` connected for each colour c
(see :func:`decompose_pattern`).  A *c-slot* is a set of host vertices that
plays the roles ``{c} ∪ V^c``; three slots of the three colours together
hold exactly |H| vertices.

Host vertices: one per element of R, G and B, plus per triple ``e`` the
numbered vertices ``3_e, 2_e, 1_e`` (taking the roles r, g, b).  Slots:

* per triple ``e``: the r-slot ``{3_e} ∪ Red_e``, the g-slot ``{2_e} ∪ Green_e``
  and the b-slot ``{1_e} ∪ Blue_e``, each extra part a fresh copy of ``V^c``;
* per element ``x`` of colour c: the slot ``{x} ∪ C_x`` with a fresh copy of ``V^c``.

For a triple ``e = (x, y, z)`` the edges of H are laid over three slot
triples (each edge of H between the roles it names, including the edges
inside a slot):

* unselected: ``(r-slot e, g-slot e, b-slot e)``;
* selected, red side: ``(slot x, g-slot e, b-slot e)``;
* selected, green/blue side: ``(r-slot e, slot y, slot z)``.

The host is the union of these edges, so the total vertex count is
``(n + t)·|H|``.  A matching choice covers the element slots of its triple
with two copies; every other triple keeps its own copy.

Worked example, H = K4 with triangle 0, 1, 2 and vertex 3 red.  The red
slots have two vertices (``{3_e, a_e}``, ``{x, a_x}``) and the others one.
For n = 1 and the single triple (0, 0, 0) the host has 8 vertices
``R, G, B, 1, 2, 3, a_R, a_e`` and three 4-cliques
``{3, a_e, 2, 1}``, ``{R, a_R, 2, 1}`` and ``{3, a_e, G, B}``.
It splits into ``{R, a_R, 2, 1}`` and ``{3, a_e, G, B}``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, disjoint_union, is_connected, induced_subgraph
from .pattern import PartitionCertificate, PatternInfo, as_pattern

RED, GREEN, BLUE = 0, 1, 2


@dataclass(frozen=True)
class ThreeDM:
    n: int
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "triples", tuple(tuple(t) for t in self.triples))
        if self.n < 0:
            raise ValueError("n must be non-negative")
        for t in self.triples:
            if len(t) != 3 or not all(0 <= x < self.n for x in t):
                raise ValueError(f"triple {t} out of range for n={self.n}")
        if len(set(self.triples)) != len(self.triples):
            raise ValueError("duplicate triple")


@dataclass(frozen=True)
class HDecomposition:
    triangle: tuple[int, int, int]  # pattern vertices (r, g, b)
    red_part: frozenset[int]
    green_part: frozenset[int]
    blue_part: frozenset[int]

    def part(self, colour: int) -> frozenset[int]:
        return (self.red_part, self.green_part, self.blue_part)[colour]

    def roles(self, colour: int) -> list[int]:
        """Pattern vertices played by a slot of this colour, the triangle vertex first."""
        return [self.triangle[colour]] + sorted(self.part(colour))


def decompose_pattern(h: PatternInfo | Graph | str) -> HDecomposition:
    info = as_pattern(h)
    hg = info.h
    if not info.is_connected:
        raise ValueError("pattern must be connected")
    tri = next(((a, b, c) for a, b, c in combinations(range(hg.n), 3)
                if hg.has_edge(a, b) and hg.has_edge(b, c) and hg.has_edge(a, c)), None)
    if tri is None:
        raise ValueError("pattern has no triangle")
    grown = [{tri[0]}, {tri[1]}, {tri[2]}]
    left = set(range(hg.n)) - set(tri)
    while left:
        progress = False
        for c in (RED, GREEN, BLUE):
            touching = sorted(v for v in left if hg.adj[v] & grown[c])
            if touching:
                grown[c].add(touching[0])
                left.discard(touching[0])
                progress = True
        if not progress:
            raise ValueError("pattern must be connected")
    return HDecomposition(tri, *(frozenset(grown[c] - {tri[c]}) for c in (RED, GREEN, BLUE)))


def check_decomposition(h: Graph, d: HDecomposition) -> bool:
    a, b, c = d.triangle
    if not (h.has_edge(a, b) and h.has_edge(b, c) and h.has_edge(a, c)):
        return False
    parts = [d.red_part, d.green_part, d.blue_part]
    union = set(d.triangle)
    for p in parts:
        if union & p:
            return False
        union |= p
    if union != set(range(h.n)):
        return False
    return all(is_connected(induced_subgraph(h, sorted(d.roles(col)))) for col in (RED, GREEN, BLUE))


def reduce_3dm(inst: ThreeDM, h: PatternInfo | Graph | str) -> Graph:
    info = as_pattern(h)
    hg = info.h
    d = decompose_pattern(info)
    n, t = inst.n, len(inst.triples)
    counter = 3 * n + 3 * t

    def fresh_slot(anchor: int, colour: int) -> dict[int, int]:
        nonlocal counter
        roles = d.roles(colour)
        slot = {roles[0]: anchor}
        for p in roles[1:]:
            slot[p] = counter
            counter += 1
        return slot

    element_slot = [[fresh_slot(c * n + i, c) for i in range(n)] for c in (RED, GREEN, BLUE)]
    edges: set[tuple[int, int]] = set()

    def lay(*slots: dict[int, int]):
        role = {}
        for s in slots:
            role.update(s)
        for a, b in hg.edges:
            edges.add((min(role[a], role[b]), max(role[a], role[b])))

    for e, (x, y, z) in enumerate(inst.triples):
        base = 3 * n + 3 * e
        # numbered gadget vertices: 1_e = base, 2_e = base + 1, 3_e = base + 2
        rs = fresh_slot(base + 2, RED)
        gs = fresh_slot(base + 1, GREEN)
        bs = fresh_slot(base, BLUE)
        lay(rs, gs, bs)
        lay(element_slot[RED][x], gs, bs)
        lay(rs, element_slot[GREEN][y], element_slot[BLUE][z])
    return Graph(counter, edges)


def solve_3dm(inst: ThreeDM) -> list[tuple[int, int, int]] | None:
    """A perfect matching by backtracking on the lowest uncovered red element."""
    by_red: list[list[tuple[int, int, int]]] = [[] for _ in range(inst.n)]
    for tr in inst.triples:
        by_red[tr[0]].append(tr)
    used_g = [False] * inst.n
    used_b = [False] * inst.n
    chosen: list[tuple[int, int, int]] = []

    def go(x: int) -> bool:
        if x == inst.n:
            return True
        for tr in by_red[x]:
            if not used_g[tr[1]] and not used_b[tr[2]]:
                used_g[tr[1]] = used_b[tr[2]] = True
                chosen.append(tr)
                if go(x + 1):
                    return True
                chosen.pop()
                used_g[tr[1]] = used_b[tr[2]] = False
        return False

    return list(chosen) if go(0) else None


def all_3dm_instances(n: int, max_triples: int):
    """Every ThreeDM on ``n`` elements with at most ``max_triples`` triples."""
    universe = [(a, b, c) for a in range(n) for b in range(n) for c in range(n)]
    for k in range(min(max_triples, len(universe)) + 1):
        for chosen in combinations(universe, k):
            yield ThreeDM(n, chosen)


# -- composition ---------------------------------------------------------------------


def cross_compose(hosts: list[Graph], join: bool = False) -> Graph:
    """Disjoint union of the hosts, or with ``join`` their complete join.

    The union is Yes iff every host is Yes when H is connected.  For a
    disconnected H the complement of H is connected, so the join (the
    complement of the union of complements) plays the same role.
    """
    if not hosts:
        raise ValueError("need at least one host")
    if not join:
        return disjoint_union(hosts)[0]
    return disjoint_union([g.complement() for g in hosts])[0].complement()


def compose_for(h: PatternInfo | Graph | str, hosts: list[Graph]) -> Graph:
    return cross_compose(hosts, join=not as_pattern(h).is_connected)


def composition_offsets(hosts: list[Graph]) -> list[int]:
    """First vertex of each host inside :func:`cross_compose`."""
    return disjoint_union(hosts)[1]


# -- random instances ------------------------------------------------------------------


def gen_planted(h: PatternInfo | Graph | str, copies: int, cross_edge_prob: float,
                seed: int) -> tuple[Graph, PartitionCertificate]:
    """Disjoint copies of H under a random labelling plus random cross-class edges."""
    if copies < 1:
        raise ValueError("copies must be at least 1")
    hg = as_pattern(h).h
    rng = random.Random(seed)
    k = hg.n
    total = k * copies
    label = list(range(total))
    rng.shuffle(label)
    edges = []
    for c in range(copies):
        edges.extend((label[c * k + a], label[c * k + b]) for a, b in hg.sorted_edges())
    for u in range(total):
        for v in range(u + 1, total):
            if u // k != v // k and rng.random() < cross_edge_prob:
                edges.append((label[u], label[v]))
    cert = PartitionCertificate.from_lists(
        [label[c * k + a] for a in range(k)] for c in range(copies))
    return Graph(total, edges), cert


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_partial_ktree(n: int, k: int, keep: float, rng: random.Random) -> Graph:
    """A random k-tree on n vertices with each edge kept with probability ``keep``."""
    if n <= k + 1:
        base = Graph.complete(n)
        return Graph(n, [e for e in base.edges if rng.random() < keep])
    edges = set(Graph.complete(k + 1).edges)
    cliques = [tuple(range(k + 1))]
    for v in range(k + 1, n):
        host = rng.choice(cliques)
        drop = rng.randrange(k + 1)
        face = host[:drop] + host[drop + 1:]
        edges.update((u, v) for u in face)
        cliques.append(face + (v,))
    return Graph(n, [e for e in edges if rng.random() < keep])


def substitute(template: Graph, blocks: list[Graph]) -> Graph:
    """Replace template vertex i by ``blocks[i]``, joining blocks along template edges."""
    if template.n != len(blocks):
        raise ValueError("one block per template vertex")
    g, offsets = disjoint_union(blocks)
    edges = set(g.edges)
    for a, b in template.edges:
        for u in range(blocks[a].n):
            for v in range(blocks[b].n):
                edges.add((offsets[a] + u, offsets[b] + v))
    return Graph(g.n, edges)


def random_substitution(n: int, max_template: int, rng: random.Random, p: float = 0.5) -> Graph:
    """A random host built by nested substitution into templates of at most ``max_template`` vertices."""
    if n <= 1:
        return Graph.empty(max(n, 0))
    k = rng.randint(2, max(2, min(n, max_template)))
    cuts = sorted(rng.sample(range(1, n), k - 1))
    sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    template = random_graph(k, p, rng)
    return substitute(template, [random_substitution(s, max_template, rng, p) for s in sizes])
