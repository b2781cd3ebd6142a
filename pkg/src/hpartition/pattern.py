"""The fixed pattern H, partition certificates and common solver outcomes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .graph import (
    ISO_SIZE_LIMIT,
    Graph,
    automorphisms,
    bits,
    diameter,
    induced_subgraph,
    is_connected,
    is_isomorphic,
    named_graph,
)
from .nd import is_prime


class BudgetExhausted(RuntimeError):
    """A search hit its configured node/state budget before deciding."""

    def __init__(self, what: str, used: int):
        super().__init__(f"{what} budget exhausted after {used} steps")
        self.used = used


@dataclass(frozen=True)
class PatternInfo:
    h: Graph
    automorphisms: tuple[tuple[int, ...], ...]
    diameter: float
    is_prime: bool
    is_connected: bool
    orbits: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, h: Graph | str, limit: int = ISO_SIZE_LIMIT) -> PatternInfo:
        if isinstance(h, str):
            h = named_graph(h)
        if h.n == 0:
            raise ValueError("pattern must have at least one vertex")
        auts = tuple(automorphisms(h, limit))
        orbits = []
        seen = set()
        for v in range(h.n):
            if v not in seen:
                orb = frozenset(p[v] for p in auts)
                seen |= orb
                orbits.append(orb)
        return cls(h, auts, diameter(h), is_prime(h), is_connected(h), tuple(orbits))

    @property
    def size(self) -> int:
        return self.h.n

    def orbit_representatives(self) -> list[int]:
        return [min(o) for o in self.orbits]


def as_pattern(h: PatternInfo | Graph | str) -> PatternInfo:
    return h if isinstance(h, PatternInfo) else PatternInfo.of(h)


@dataclass(frozen=True)
class PartitionCertificate:
    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_lists(cls, classes: Iterable[Iterable[int]]) -> PartitionCertificate:
        cl = [frozenset(c) for c in classes]
        cl.sort(key=lambda c: (min(c) if c else -1, len(c)))
        return cls(tuple(cl))

    def __len__(self):
        return len(self.classes)


def verify_certificate(g: Graph, h: PatternInfo | Graph, cert: PartitionCertificate) -> bool:
    """Classes partition V(g), all have |h| vertices and induce copies of h."""
    hg = h.h if isinstance(h, PatternInfo) else h
    covered: set[int] = set()
    total = 0
    for c in cert.classes:
        if len(c) != hg.n:
            return False
        for v in c:
            if not isinstance(v, int) or not 0 <= v < g.n:
                return False
        total += len(c)
        covered |= c
    if total != g.n or len(covered) != g.n:
        return False
    limit = max(ISO_SIZE_LIMIT, hg.n)
    return all(is_isomorphic(induced_subgraph(g, c), hg, limit) for c in cert.classes)


@dataclass
class Outcome:
    """Decision returned by every solver.

    ``certificate`` is set for Yes answers of certificate-producing solvers;
    ``copies`` is the number of classes when only a count is known.
    """

    yes: bool
    certificate: PartitionCertificate | None = None
    copies: int | None = None
    stats: dict = field(default_factory=dict)

    def __bool__(self):
        return self.yes


def trivial_outcome(g: Graph, info: PatternInfo) -> Outcome | None:
    """Answers shared by all solvers: |H| = 1 and the divisibility check."""
    if info.size == 1:
        return Outcome(True, PartitionCertificate.from_lists([v] for v in range(g.n)), g.n)
    if g.n % info.size:
        return Outcome(False, stats={"reason": "size not divisible"})
    if g.n == 0:
        return Outcome(True, PartitionCertificate(()), 0)
    return None


def _extension_plan(info: PatternInfo, seed: int) -> list[tuple[int, list[tuple[int, bool]]]]:
    # Breadth-first order from the seed so each step is constrained by a mapped neighbour.
    h = info.h
    order = [seed]
    placed = {seed}
    while len(order) < h.n:
        frontier = [v for v in range(h.n) if v not in placed and h.adj[v] & placed]
        nxt = min(frontier) if frontier else min(v for v in range(h.n) if v not in placed)
        order.append(nxt)
        placed.add(nxt)
    return [(order[i], [(j, h.has_edge(order[i], order[j])) for j in range(i)])
            for i in range(len(order))]


def copies_through(g: Graph, info: PatternInfo, pivot: int, allowed: int) -> Iterator[int]:
    """Distinct vertex sets (bitmasks) inside ``allowed`` that contain ``pivot``
    and induce a copy of the pattern.

    The pivot is matched only against one representative per Aut(H) orbit.
    """
    found = set()
    k = info.size
    for seed in info.orbit_representatives():
        plan = _extension_plan(info, seed)
        image = [0] * k

        def extend(i: int, used: int):
            if i == k:
                yield used
                return
            _, constraints = plan[i]
            cand = allowed & ~used
            for j, adjacent in constraints:
                m = g.mask[image[j]]
                cand &= m if adjacent else ~m
                if not cand:
                    return
            for w in bits(cand):
                image[i] = w
                yield from extend(i + 1, used | (1 << w))

        image[0] = pivot
        for s in extend(1, 1 << pivot):
            if s not in found:
                found.add(s)
                yield s


def induced_copies(g: Graph, info: PatternInfo, allowed: int | None = None) -> list[int]:
    """All vertex sets (bitmasks) of ``g`` inducing the pattern, smallest vertex first."""
    if allowed is None:
        allowed = (1 << g.n) - 1
    out = []
    rest = allowed
    for v in bits(allowed):
        out.extend(sorted(copies_through(g, info, v, rest)))
        rest &= ~(1 << v)
    return out
