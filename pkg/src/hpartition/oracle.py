"""Brute-force decision procedure used as ground truth."""

from __future__ import annotations

from .graph import Graph, bits, components_mask
from .pattern import (
    BudgetExhausted,
    Outcome,
    PartitionCertificate,
    PatternInfo,
    as_pattern,
    copies_through,
    trivial_outcome,
)

DEFAULT_BUDGET = 10_000_000


def solve_oracle(g: Graph, h: PatternInfo | Graph | str, budget: int = DEFAULT_BUDGET) -> Outcome:
    """Backtracking over copies containing the lowest uncovered vertex.

    Raises ``BudgetExhausted`` after ``budget`` search nodes.
    """
    info = as_pattern(h)
    trivial = trivial_outcome(g, info)
    if trivial is not None:
        return trivial
    k = info.size
    prune_components = info.is_connected
    failed: set[int] = set()
    nodes = 0
    chosen: list[int] = []

    def search(uncovered: int) -> bool:
        nonlocal nodes
        if not uncovered:
            return True
        if uncovered in failed:
            return False
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted("oracle", nodes)
        if prune_components and any(c.bit_count() % k for c in components_mask(g, uncovered)):
            failed.add(uncovered)
            return False
        pivot = (uncovered & -uncovered).bit_length() - 1
        for copy in copies_through(g, info, pivot, uncovered):
            chosen.append(copy)
            if search(uncovered & ~copy):
                return True
            chosen.pop()
        failed.add(uncovered)
        return False

    found = search((1 << g.n) - 1)
    stats = {"search_nodes": nodes}
    if not found:
        return Outcome(False, stats=stats)
    cert = PartitionCertificate.from_lists(bits(c) for c in chosen)
    return Outcome(True, cert, len(chosen), stats)
