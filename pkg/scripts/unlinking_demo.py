"""Show why the mw node program needs its unlinking counts.

The host substitutes P4 into one vertex of a P4 template and edgeless
blocks into the other three.  The copy inside the P4 block has to be
"unlinked" from the template before the remaining twelve vertices can be
covered, so pinning the unlinking variables to zero turns a Yes into a No.
"""

import argparse

from hpartition.generators import substitute
from hpartition.graph import Graph
from hpartition.oracle import solve_oracle
from hpartition.pattern import PatternInfo
from hpartition.solver_mw import solve_mw


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--block", type=int, default=4, help="size of each edgeless block")
    args = parser.parse_args()
    g = substitute(Graph.path(4), [Graph.path(4)] + [Graph.empty(args.block)] * 3)
    info = PatternInfo.of("P4")
    print(f"host: {g.n} vertices, {g.m} edges")
    print(f"oracle: {solve_oracle(g, info).yes}")
    print(f"mw with unlinking: {solve_mw(g, info).yes}")
    print(f"mw with unlinking fixed at 0: {solve_mw(g, info, allow_unlinking=False).yes}")


if __name__ == "__main__":
    main()
