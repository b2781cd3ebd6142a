"""Run the acceptance tests and print one line per criterion."""

import argparse
import sys
from pathlib import Path

import pytest


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-k", default=None, help="pytest -k filter, e.g. criterion_05")
    args = parser.parse_args()
    target = Path(__file__).resolve().parent.parent / "tests" / "test_acceptance.py"
    argv = ["-q", str(target)]
    if args.k:
        argv += ["-k", args.k]
    return pytest.main(argv)


if __name__ == "__main__":
    sys.exit(main())
