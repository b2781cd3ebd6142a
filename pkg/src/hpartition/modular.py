"""Modular decomposition trees (union / join / substitution into a prime template).

The decomposition is computed recursively: split by connected components,
then by co-components, otherwise the maximal proper modules of a connected
and co-connected graph partition its vertices and are found by closing
vertex pairs under splitters.  Roughly O(n^3) bit operations per level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph, bits, components_mask, induced_subgraph


@dataclass(frozen=True)
class Leaf:
    vertex: int
    kind = "leaf"


@dataclass(frozen=True)
class UnionNode:
    children: tuple
    kind = "union"


@dataclass(frozen=True)
class JoinNode:
    children: tuple
    kind = "join"


@dataclass(frozen=True)
class PrimeNode:
    template: Graph
    children: tuple
    kind = "prime"


ModularTree = Union[Leaf, UnionNode, JoinNode, PrimeNode]


def leaves(t: ModularTree) -> list[int]:
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node.vertex)
        else:
            stack.extend(reversed(node.children))
    return out


def _co_components(g: Graph, within: int) -> list[int]:
    # Components of the complement restricted to ``within``.
    comps = []
    rest = within
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= ~g.mask[v] & rest & ~comp & ~(1 << v)
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


def _module_closure(g: Graph, within: int, seed: int) -> int:
    """Smallest module of g[within] containing the vertex set ``seed``."""
    mod = seed
    changed = True
    while changed:
        changed = False
        for x in bits(within & ~mod):
            a = g.mask[x] & mod
            if a and a != mod:
                mod |= 1 << x
                changed = True
    return mod


def _maximal_modules(g: Graph, within: int) -> list[int]:
    modules = []
    rest = within
    while rest:
        u = (rest & -rest).bit_length() - 1
        mod = 1 << u
        for v in bits(rest & ~(1 << u)):
            if (mod >> v) & 1:
                continue
            closure = _module_closure(g, within, (1 << u) | (1 << v))
            if closure != within:
                mod |= closure
        modules.append(mod)
        rest &= ~mod
    return modules


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _decompose(g: Graph, within: int) -> ModularTree:
    if within & (within - 1) == 0:
        return Leaf(_lowest(within))
    comps = components_mask(g, within)
    if len(comps) > 1:
        return UnionNode(tuple(_decompose(g, c) for c in sorted(comps, key=_lowest)))
    cocomps = _co_components(g, within)
    if len(cocomps) > 1:
        return JoinNode(tuple(_decompose(g, c) for c in sorted(cocomps, key=_lowest)))
    modules = sorted(_maximal_modules(g, within), key=_lowest)
    template = induced_subgraph(g, [_lowest(m) for m in modules])
    return PrimeNode(template, tuple(_decompose(g, m) for m in modules))


def modular_decompose(g: Graph) -> ModularTree:
    if g.n < 1:
        raise ValueError("modular decomposition needs at least one vertex")
    return _decompose(g, (1 << g.n) - 1)


def modular_width(t: ModularTree) -> int:
    """Largest prime template; 2 for cographs on >= 2 vertices, 1 for a single vertex."""
    if isinstance(t, Leaf):
        return 1
    width = 2
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            continue
        if isinstance(node, PrimeNode):
            width = max(width, node.template.n)
        stack.extend(node.children)
    return width


def template_of(node: ModularTree) -> Graph:
    """The quotient graph on a node's children (edgeless for union, complete for join)."""
    if isinstance(node, PrimeNode):
        return node.template
    if isinstance(node, UnionNode):
        return Graph.empty(len(node.children))
    if isinstance(node, JoinNode):
        return Graph.complete(len(node.children))
    return Graph.empty(1)


def evaluate(t: ModularTree) -> Graph:
    """Rebuild the graph; leaves must be exactly the vertices 0..n-1."""
    verts = leaves(t)
    n = len(verts)
    if sorted(verts) != list(range(n)):
        raise ValueError("tree leaves must be the distinct vertices 0..n-1")
    edges: list[tuple[int, int]] = []

    def walk(node) -> list[int]:
        if isinstance(node, Leaf):
            return [node.vertex]
        blocks = [walk(c) for c in node.children]
        tmpl = template_of(node)
        if tmpl.n != len(blocks):
            raise ValueError("template size differs from the number of children")
        for i, j in tmpl.edges:
            edges.extend((a, b) for a in blocks[i] for b in blocks[j])
        return [v for b in blocks for v in b]

    walk(t)
    return Graph(n, edges)


def is_module_prime(g: Graph) -> bool:
    """True iff g has no module M with 1 < |M| < |g|."""
    if g.n <= 2:
        return True
    t = modular_decompose(g)
    return isinstance(t, PrimeNode) and all(isinstance(c, Leaf) for c in t.children)


def describe(t: ModularTree, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(t, Leaf):
        return f"{pad}leaf {t.vertex}"
    head = f"{pad}{t.kind}"
    if isinstance(t, PrimeNode):
        head += f" template={t.template.sorted_edges()}"
    return "\n".join([head] + [describe(c, indent + 1) for c in t.children])
