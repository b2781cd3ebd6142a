"""Command-line front end.  Exit codes: 0 yes, 1 no, 2 error, 3 budget exhausted."""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .dispatch import EXHAUSTED, STRATEGIES, YES, DispatchConfig, SolveReport, dispatch
from .generators import compose_for, gen_planted, reduce_3dm
from .io import (
    parse_3dm,
    parse_certificate,
    parse_graph,
    serialize_certificate,
    serialize_graph,
)
from .modular import describe, modular_decompose, modular_width
from .mso import emit_mso
from .nd import nd_decompose
from .pattern import PatternInfo, verify_certificate
from .treedecomp import tree_decompose

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3
CSV_COLUMNS = ["instance", "strategy", "answer", "nd", "mw", "tw", "ilpVars", "nodes", "ms"]


def _read_graph(path: str):
    return parse_graph(Path(path).read_text())


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _config(args) -> DispatchConfig:
    return DispatchConfig(nd_cap=args.nd_cap, tw_cap=args.tw_cap, budget=args.budget)


def cmd_solve(args) -> int:
    g = _read_graph(args.graph)
    report = dispatch(g, PatternInfo.of(args.pattern), args.strategy, _config(args))
    sys.stdout.write(report.to_text())
    if args.certificate_out:
        if report.certificate is not None:
            Path(args.certificate_out).write_text(serialize_certificate(report.certificate))
        elif report.answer == YES:
            print(f"note: no certificate written, {report.strategy} decided by counting only",
                  file=sys.stderr)
        else:
            print(f"note: no certificate written, the answer is {report.answer}", file=sys.stderr)
    if report.answer == YES:
        return EXIT_YES
    return EXIT_BUDGET if report.answer == EXHAUSTED else EXIT_NO


def cmd_decompose(args) -> int:
    g = _read_graph(args.graph)
    if args.kind == "nd":
        d = nd_decompose(g)
        rows = [f"nd: {d.nd}"]
        rows += [f"type {i} {t.kind}: " + " ".join(map(str, sorted(t.vertices)))
                 for i, t in enumerate(d.types)]
        rows += [f"type-edge: {a} {b}" for a, b in d.type_graph.sorted_edges()]
    elif args.kind == "mw":
        tree = modular_decompose(g)
        rows = [f"mw: {modular_width(tree)}", describe(tree).rstrip("\n")]
    else:
        td = tree_decompose(g, "exact" if args.exact else "heuristic")
        rows = [f"tw: {td.width}"]
        rows += [f"bag {i}: " + " ".join(map(str, sorted(b))) for i, b in enumerate(td.bags)]
        rows += [f"tree-edge: {a} {b}" for a, b in td.tree]
    _write("\n".join(rows) + "\n", None)
    return EXIT_YES


def cmd_emit_mso(args) -> int:
    _write(emit_mso(PatternInfo.of(args.pattern)).text + "\n", args.output)
    return EXIT_YES


def cmd_generate(args) -> int:
    if args.kind == "planted":
        g, cert = gen_planted(PatternInfo.of(args.pattern), args.copies, args.cross_prob, args.seed)
        if args.certificate_out:
            Path(args.certificate_out).write_text(serialize_certificate(cert))
    elif args.kind == "gadget":
        if not args.inputs:
            raise ValueError("gadget needs a 3DM instance file")
        g = reduce_3dm(parse_3dm(Path(args.inputs[0]).read_text()), PatternInfo.of(args.pattern))
    else:
        if not args.inputs:
            raise ValueError("cross needs at least one graph file")
        g = compose_for(PatternInfo.of(args.pattern), [_read_graph(p) for p in args.inputs])
    _write(serialize_graph(g), args.output)
    return EXIT_YES


def cmd_verify(args) -> int:
    g = _read_graph(args.graph)
    cert = parse_certificate(Path(args.certificate).read_text())
    ok = verify_certificate(g, PatternInfo.of(args.pattern), cert)
    print("valid" if ok else "invalid")
    return EXIT_YES if ok else EXIT_NO


def bench_row(name: str, report: SolveReport) -> dict:
    s = report.stats
    return {"instance": name, "strategy": report.strategy, "answer": report.answer,
            "nd": s.get("nd", ""), "mw": s.get("mw", ""), "tw": s.get("tw", ""),
            "ilpVars": s.get("ilp_variables", ""), "nodes": s.get("search_nodes", ""),
            "ms": s.get("wall_ms", "")}


def cmd_bench(args) -> int:
    files = sorted(Path(args.directory).glob(args.glob))
    if not files:
        raise ValueError(f"no instances matching {args.glob!r} in {args.directory}")
    info = PatternInfo.of(args.pattern)
    config = _config(args)
    graphs = [(f.name, parse_graph(f.read_text())) for f in files]

    def run(item):
        name, g = item
        return bench_row(name, dispatch(g, info, args.strategy, config))

    with ThreadPoolExecutor(max_workers=args.workers) as pool:
        rows = list(pool.map(run, graphs))  # map keeps input order
    sink = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.DictWriter(sink, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.output:
            sink.close()
    return EXIT_YES


def _solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pattern", required=True, help="pattern name (K3, P4, C5, 2K1) or graph file")
    p.add_argument("--strategy", default="auto", choices=STRATEGIES)
    p.add_argument("--budget", type=int, default=None,
                   help="search-node budget for the oracle, state budget for tw")
    p.add_argument("--nd-cap", type=int, default=8, help="auto picks nd when nd(G) is at most this")
    p.add_argument("--tw-cap", type=int, default=8, help="auto picks tw when the width is at most this")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hpartition", description="Partition a graph into induced copies of H.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide a partition instance")
    p.add_argument("graph")
    _solver_flags(p)
    p.add_argument("--certificate-out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("decompose", help="print a structural decomposition")
    p.add_argument("graph")
    p.add_argument("--kind", choices=("nd", "mw", "tw"), default="nd")
    p.add_argument("--exact", action="store_true", help="exact tree decomposition (small graphs)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("emit-mso", help="print the MSO2 sentence for a pattern")
    p.add_argument("--pattern", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_emit_mso)

    p = sub.add_parser("generate", help="build an instance")
    p.add_argument("kind", choices=("planted", "gadget", "cross"))
    p.add_argument("inputs", nargs="*", help="3DM file for gadget, graph files for cross")
    p.add_argument("--pattern", default="K3")
    p.add_argument("--copies", type=int, default=3)
    p.add_argument("--cross-prob", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--certificate-out", help="planted certificate destination")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a certificate")
    p.add_argument("graph")
    p.add_argument("--pattern", required=True)
    p.add_argument("--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="solve every instance in a directory, CSV out")
    p.add_argument("directory")
    _solver_flags(p)
    p.add_argument("--glob", default="*.graph")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def _pattern_arg(args) -> None:
    # A pattern may also be given as a graph file.
    pat = getattr(args, "pattern", None)
    if pat and Path(pat).is_file():
        args.pattern = _read_graph(pat)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        _pattern_arg(args)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
