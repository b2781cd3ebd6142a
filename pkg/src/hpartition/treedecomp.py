"""Tree decompositions from elimination orderings, and nice decompositions."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits
from .pattern import BudgetExhausted

EXACT_BUDGET = 2_000_000


@dataclass(frozen=True)
class TreeDecomposition:
    bags: tuple[frozenset[int], ...]
    tree: tuple[tuple[int, int], ...]  # edges between bag indices

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbours(self) -> list[list[int]]:
        adj = [[] for _ in self.bags]
        for a, b in self.tree:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_valid(self, g: Graph) -> bool:
        k = len(self.bags)
        if k == 0 or len(self.tree) != k - 1:
            return False
        adj = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            for b in adj[stack.pop()]:
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != k:
            return False
        for v in range(g.n):
            holders = {i for i, bag in enumerate(self.bags) if v in bag}
            if not holders:
                return False
            start = next(iter(holders))
            reach = {start}
            stack = [start]
            while stack:
                for b in adj[stack.pop()]:
                    if b in holders and b not in reach:
                        reach.add(b)
                        stack.append(b)
            if reach != holders:
                return False
        return all(any(u in bag and v in bag for bag in self.bags) for u, v in g.edges)


def _eliminate_neighbourhood(g: Graph, eliminated: int, v: int) -> int:
    # Vertices outside eliminated ∪ {v} reachable from v through eliminated vertices.
    seen = 1 << v
    frontier = 1 << v
    out = 0
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.mask[u]
        nxt &= ~seen
        seen |= nxt
        out |= nxt & ~eliminated
        frontier = nxt & eliminated
    return out


def min_fill_ordering(g: Graph) -> list[int]:
    adj = [set(a) for a in g.adj]
    remaining = set(range(g.n))
    order = []
    while remaining:
        def fill(v):
            nb = sorted(adj[v])
            return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])

        v = min(remaining, key=lambda x: (fill(x), len(adj[x]), x))
        nb = adj[v]
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        remaining.discard(v)
        order.append(v)
    return order


def ordering_width(g: Graph, order: list[int]) -> int:
    eliminated = 0
    width = 0
    for v in order:
        width = max(width, _eliminate_neighbourhood(g, eliminated, v).bit_count())
        eliminated |= 1 << v
    return width


def exact_ordering(g: Graph, budget: int = EXACT_BUDGET) -> list[int]:
    """Minimum-width elimination ordering by memoised branch and bound on eliminated sets."""
    n = g.n
    full = (1 << n) - 1
    upper_order = min_fill_ordering(g)
    best_width = ordering_width(g, upper_order)
    memo: dict[int, int] = {}
    lower: dict[int, int] = {}
    choice: dict[int, int] = {}
    calls = 0

    def solve(eliminated: int, bound: int) -> int:
        # Exact least width for the remaining vertices if it is < bound, else bound.
        nonlocal calls
        rest = full & ~eliminated
        if not rest:
            return 0
        if eliminated in memo:
            return min(memo[eliminated], bound)
        if lower.get(eliminated, -1) >= bound:
            return bound
        calls += 1
        if calls > budget:
            raise BudgetExhausted("exact tree decomposition", calls)
        best, pick = bound, None
        for v in bits(rest):
            deg = _eliminate_neighbourhood(g, eliminated, v).bit_count()
            if deg >= best:
                continue
            sub = max(deg, solve(eliminated | (1 << v), best))
            if sub < best:
                best, pick = sub, v
        if pick is None:
            lower[eliminated] = bound
            return bound
        memo[eliminated] = best
        choice[eliminated] = pick
        return best

    width = solve(0, best_width)
    if width >= best_width:
        return upper_order
    order = []
    eliminated = 0
    while eliminated != full:
        v = choice[eliminated]
        order.append(v)
        eliminated |= 1 << v
    if ordering_width(g, order) != width:
        raise AssertionError("reconstructed ordering does not achieve the computed width")
    return order


def from_ordering(g: Graph, order: list[int]) -> TreeDecomposition:
    if g.n == 0:
        return TreeDecomposition((frozenset(),), ())
    pos = {v: i for i, v in enumerate(order)}
    eliminated = 0
    bags = []
    parent = []
    for v in order:
        later = _eliminate_neighbourhood(g, eliminated, v)
        bags.append(frozenset(bits(later)) | {v})
        parent.append(min((pos[u] for u in bits(later)), default=None))
        eliminated |= 1 << v
    edges = [(i, p) for i, p in enumerate(parent) if p is not None]
    roots = [i for i, p in enumerate(parent) if p is None]
    edges.extend((roots[i], roots[i + 1]) for i in range(len(roots) - 1))
    return TreeDecomposition(tuple(bags), tuple(edges))


def tree_decompose(g: Graph, mode: str = "heuristic", budget: int = EXACT_BUDGET) -> TreeDecomposition:
    if mode == "heuristic":
        order = min_fill_ordering(g)
    elif mode == "exact":
        order = exact_ordering(g, budget)
    else:
        raise ValueError("mode must be 'exact' or 'heuristic'")
    return from_ordering(g, order)


# -- nice decompositions ------------------------------------------------------------


@dataclass(frozen=True)
class NiceNode:
    kind: str  # leaf | introduce | forget | join
    bag: frozenset[int]
    vertex: int | None = None
    children: tuple[int, ...] = ()


def make_nice(td: TreeDecomposition, root: int = 0) -> list[NiceNode]:
    """Nice decomposition as a list in which children precede parents.

    Leaves and the root (last element) have empty bags.
    """
    nodes: list[NiceNode] = []
    adj = td.neighbours()

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def morph(idx: int, target: frozenset[int]) -> int:
        bag = nodes[idx].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            idx = add(NiceNode("forget", bag, v, (idx,)))
        for v in sorted(target - bag):
            bag = bag | {v}
            idx = add(NiceNode("introduce", bag, v, (idx,)))
        return idx

    # Iterative post-order over the bag tree.
    order = []
    parent = {root: None}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in sorted(adj[x], reverse=True):
            if y not in parent:
                parent[y] = x
                stack.append(y)
    built: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [y for y in adj[x] if parent.get(y) == x]
        if not kids:
            built[x] = morph(add(NiceNode("leaf", frozenset())), bag)
            continue
        parts = [morph(built[y], bag) for y in sorted(kids)]
        acc = parts[0]
        for other in parts[1:]:
            acc = add(NiceNode("join", bag, None, (acc, other)))
        built[x] = acc
    morph(built[root], frozenset())
    return nodes
