"""Dynamic programming over a nice tree decomposition for connected patterns.

A state lists the partial copies ("fragments") that touch the current bag.
A fragment records which bag vertex plays which pattern vertex (its
anchor) and the set of pattern vertices already used, forgotten ones
included.  Two rules make the copies induced:

* a vertex joining a fragment must be adjacent in G to the fragment's bag
  vertices exactly where its pattern vertex is adjacent in H;
* a vertex may be forgotten only once all H-neighbours of its pattern
  vertex are used, because nothing introduced later can be adjacent to it.

Vertices of different fragments are unconstrained.  A fragment that loses
its last bag vertex must be a complete copy.  Fragments are kept canonical
under Aut(H).
"""

from __future__ import annotations

from itertools import product

from .graph import Graph
from .pattern import (
    BudgetExhausted,
    Outcome,
    PartitionCertificate,
    PatternInfo,
    as_pattern,
    trivial_outcome,
)
from .treedecomp import TreeDecomposition, make_nice, tree_decompose

DEFAULT_STATE_BUDGET = 2_000_000

# Fragment: (anchor, used) with anchor a sorted tuple of (bag vertex, pattern vertex)
# and used a bitmask over pattern vertices.  State: tuple of fragments sorted by anchor.


class PatternDisconnected(ValueError):
    pass


class _Pattern:
    def __init__(self, info: PatternInfo):
        self.info = info
        self.h = info.h
        self.k = info.size
        self.full = (1 << self.k) - 1
        self.nbr = info.h.mask
        self.auts = info.automorphisms
        self.reps = info.orbit_representatives()
        self._canon: dict = {}
        self._stab: dict = {}

    def map_mask(self, sigma, mask: int) -> int:
        out = 0
        for u in range(self.k):
            if (mask >> u) & 1:
                out |= 1 << sigma[u]
        return out

    def canonical(self, anchor: tuple, used: int) -> tuple:
        key = (anchor, used)
        hit = self._canon.get(key)
        if hit is None:
            hit = min((tuple((x, s[p]) for x, p in anchor), self.map_mask(s, used))
                      for s in self.auts)
            self._canon[key] = hit
        return hit

    def stabiliser(self, anchor: tuple) -> list:
        hit = self._stab.get(anchor)
        if hit is None:
            hit = [s for s in self.auts if all(s[p] == p for _, p in anchor)]
            self._stab[anchor] = hit
        return hit


def _state(fragments) -> tuple:
    return tuple(sorted(fragments))


def _introduce(state, y: int, g: Graph, pat: _Pattern):
    for p in pat.reps:
        yield _state(state + (pat.canonical(((y, p),), 1 << p),))
    for i, (anchor, used) in enumerate(state):
        rest = state[:i] + state[i + 1:]
        for p in range(pat.k):
            if (used >> p) & 1:
                continue
            if all(g.has_edge(x, y) == ((pat.nbr[p] >> q) & 1 == 1) for x, q in anchor):
                frag = pat.canonical(tuple(sorted(anchor + ((y, p),))), used | (1 << p))
                yield _state(rest + (frag,))


def _forget(state, x: int, pat: _Pattern):
    for i, (anchor, used) in enumerate(state):
        for v, p in anchor:
            if v != x:
                continue
            if pat.nbr[p] & ~used:
                return None
            rest = state[:i] + state[i + 1:]
            left = tuple(a for a in anchor if a[0] != x)
            if not left:
                return rest if used == pat.full else None
            return _state(rest + (pat.canonical(left, used),))
    raise AssertionError(f"vertex {x} is in no fragment")


def _join(left, right, pat: _Pattern):
    options = []
    for (anchor, used_l), (_, used_r) in zip(left, right):
        img = 0
        for _, p in anchor:
            img |= 1 << p
        merged = []
        for s in pat.stabiliser(anchor):
            mapped = pat.map_mask(s, used_r)
            if used_l & mapped == img:
                merged.append(pat.canonical(anchor, used_l | mapped))
        if not merged:
            return []
        options.append(sorted(set(merged)))
    return [_state(combo) for combo in product(*options)]


def solve_tw(g: Graph, h: PatternInfo | Graph | str, td: TreeDecomposition | None = None,
             state_budget: int = DEFAULT_STATE_BUDGET) -> Outcome:
    info = as_pattern(h)
    if not info.is_connected:
        raise PatternDisconnected("the tree-width solver needs a connected pattern")
    trivial = trivial_outcome(g, info)
    if trivial is not None:
        return trivial
    if td is None:
        td = tree_decompose(g, "heuristic")
    if not td.is_valid(g):
        raise ValueError("invalid tree decomposition for this graph")
    pat = _Pattern(info)
    nice = make_nice(td)
    tables: list[dict] = []
    total = 0
    for node in nice:
        table: dict = {}
        if node.kind == "leaf":
            table[()] = None
        elif node.kind == "introduce":
            (c,) = node.children
            for s in tables[c]:
                for t in _introduce(s, node.vertex, g, pat):
                    table.setdefault(t, (s,))
        elif node.kind == "forget":
            (c,) = node.children
            for s in tables[c]:
                t = _forget(s, node.vertex, pat)
                if t is not None:
                    table.setdefault(t, (s,))
        else:
            a, b = node.children
            by_anchor: dict = {}
            for s in tables[b]:
                by_anchor.setdefault(tuple(f[0] for f in s), []).append(s)
            for s in tables[a]:
                for r in by_anchor.get(tuple(f[0] for f in s), ()):
                    for t in _join(s, r, pat):
                        table.setdefault(t, (s, r))
        total += len(table)
        if total > state_budget:
            raise BudgetExhausted("tree-width DP state", total)
        tables.append(table)
    stats = {"tw": td.width, "dp_states": total}
    if () not in tables[-1]:
        return Outcome(False, stats=stats)
    cert = _reconstruct(g.n, nice, tables)
    return Outcome(True, cert, len(cert), stats)


def _reconstruct(n: int, nice, tables) -> PartitionCertificate:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    stack = [(len(nice) - 1, ())]
    while stack:
        idx, state = stack.pop()
        for anchor, _ in state:
            first = anchor[0][0]
            for v, _ in anchor[1:]:
                parent[find(v)] = find(first)
        back = tables[idx][state]
        if back is not None:
            stack.extend(zip(nice[idx].children, back))
    classes: dict[int, list[int]] = {}
    for v in range(n):
        classes.setdefault(find(v), []).append(v)
    return PartitionCertificate.from_lists(classes.values())
