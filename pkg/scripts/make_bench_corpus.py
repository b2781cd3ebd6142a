"""Write a directory of benchmark instances and solve them with ``hpartition bench``.

Instances mix planted Yes hosts, random graphs and 3DM gadgets, so the
resulting CSV exercises every strategy the auto rule can pick.
"""

import argparse
import random
import sys
from pathlib import Path

from hpartition.cli import main as cli_main
from hpartition.generators import ThreeDM, gen_planted, random_graph, random_substitution, reduce_3dm
from hpartition.io import serialize_graph


def build(directory: Path, pattern: str, count: int, seed: int) -> None:
    rng = random.Random(seed)
    directory.mkdir(parents=True, exist_ok=True)
    for i in range(count):
        kind = i % 4
        if kind == 0:
            g, _ = gen_planted(pattern, rng.randint(1, 3), rng.random() * 0.5, rng.randrange(10**6))
        elif kind == 1:
            g = random_graph(rng.randint(6, 12), rng.random(), rng)
        elif kind == 2:
            g = random_substitution(rng.randint(6, 16), 5, rng)
        else:
            n = rng.randint(1, 2)
            triples = rng.sample([(a, b, c) for a in range(n) for b in range(n) for c in range(n)],
                                 rng.randint(1, n * n))
            g = reduce_3dm(ThreeDM(n, triples), "K3")
        (directory / f"inst{i:03d}.graph").write_text(serialize_graph(g))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("directory", type=Path)
    parser.add_argument("--pattern", default="K3")
    parser.add_argument("--count", type=int, default=24)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("-o", "--output", help="CSV destination (stdout if omitted)")
    args = parser.parse_args()
    build(args.directory, args.pattern, args.count, args.seed)
    argv = ["bench", str(args.directory), "--pattern", args.pattern, "--workers", str(args.workers)]
    if args.output:
        argv += ["-o", args.output]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
