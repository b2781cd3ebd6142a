"""Partition into H parameterised by neighborhood diversity.

Every copy of H maps its vertices to types of the host.  Which types it
uses, and how many vertices of each, is an *embedding pattern*; vertices
inside one type are interchangeable, so a partition exists iff the type
cardinalities can be written as a non-negative integer combination of
pattern count vectors.  That exact-cover system is handed to the ILP engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .ilp import IntegerProgram, solve_ip
from .nd import CLIQUE, SINGLETON, NDDecomposition, nd_decompose
from .pattern import Outcome, PartitionCertificate, PatternInfo, as_pattern, trivial_outcome


@dataclass(frozen=True)
class EmbeddingPattern:
    assignment: tuple[int, ...]  # pattern vertex -> type index

    def count_per_type(self, num_types: int) -> list[int]:
        counts = [0] * num_types
        for t in self.assignment:
            counts[t] += 1
        return counts


def _canonical(assignment: tuple[int, ...], info: PatternInfo) -> tuple[int, ...]:
    # Pattern under sigma: vertex sigma(u) goes where u went.
    best = assignment
    k = len(assignment)
    for sigma in info.automorphisms:
        image = [0] * k
        for u in range(k):
            image[sigma[u]] = assignment[u]
        image = tuple(image)
        if image < best:
            best = image
    return best


def enumerate_patterns(h: PatternInfo | Graph | str, nd: NDDecomposition,
                       stats: dict | None = None) -> list[EmbeddingPattern]:
    """Valid embeddings of H into the type graph, one per Aut(H)-class."""
    info = as_pattern(h)
    hg = info.h
    k = hg.n
    tg = nd.type_graph
    kinds = [t.kind for t in nd.types]
    sizes = [t.size for t in nd.types]
    assign = [0] * k
    used = [0] * len(kinds)
    raw = 0
    seen: set[tuple[int, ...]] = set()
    out: list[EmbeddingPattern] = []

    def ok(u: int, t: int) -> bool:
        if used[t] + 1 > sizes[t]:
            return False
        for w in range(u):
            s = assign[w]
            if s == t:
                if kinds[t] == SINGLETON or hg.has_edge(u, w) != (kinds[t] == CLIQUE):
                    return False
            elif hg.has_edge(u, w) != tg.has_edge(s, t):
                return False
        return True

    def place(u: int):
        nonlocal raw
        if u == k:
            raw += 1
            canon = _canonical(tuple(assign), info)
            if canon not in seen:
                seen.add(canon)
                out.append(EmbeddingPattern(canon))
            return
        for t in range(len(kinds)):
            if ok(u, t):
                assign[u] = t
                used[t] += 1
                place(u + 1)
                used[t] -= 1

    place(0)
    out.sort(key=lambda p: p.assignment)
    if stats is not None:
        stats["patterns_raw"] = raw
        stats["patterns"] = len(out)
    return out


def solve_nd(g: Graph, h: PatternInfo | Graph | str) -> Outcome:
    info = as_pattern(h)
    trivial = trivial_outcome(g, info)
    if trivial is not None:
        return trivial
    host = nd_decompose(g)
    pattern_nd = nd_decompose(info.h).nd
    stats: dict = {"nd": host.nd, "pattern_nd": pattern_nd}
    if pattern_nd > host.nd:
        stats["reason"] = "nd(H) > nd(G)"
        return Outcome(False, stats=stats)
    patterns = enumerate_patterns(info, host, stats)
    num_copies = g.n // info.size
    prog = IntegerProgram()
    counts = [p.count_per_type(host.nd) for p in patterns]
    names = [prog.add_int(f"z{i}", 0, num_copies) for i in range(len(patterns))]
    for t, typ in enumerate(host.types):
        prog.add_constraint({names[i]: counts[i][t] for i in range(len(patterns))}, "=", typ.size)
    stats["ilp_variables"] = prog.num_int_vars
    sol = solve_ip(prog)
    if sol is None:
        return Outcome(False, stats=stats)
    stats["ilp_nodes"] = sol.nodes
    pools = [sorted(t.vertices, reverse=True) for t in host.types]
    classes = []
    for i, p in enumerate(patterns):
        for _ in range(int(sol.assignment[names[i]])):
            classes.append([pools[t].pop() for t in p.assignment])
    cert = PartitionCertificate.from_lists(classes)
    return Outcome(True, cert, len(classes), stats)
