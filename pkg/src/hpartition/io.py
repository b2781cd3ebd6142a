"""Text formats for graphs, 3DM instances and partition certificates.

Graph::

    # comment
    p <n> <m>
    u v          (m lines, 0-based)

3DM: first line ``n t``, then ``t`` lines ``r g b``.
Certificate: one class per line, vertices separated by spaces.
"""

from __future__ import annotations

from .generators import ThreeDM
from .graph import Graph
from .pattern import PartitionCertificate


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _ints(no: int, fields: list[str], what: str) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"line {no}: {what} must be integers, got {' '.join(fields)!r}") from None


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines:
        raise FormatError("malformed header: empty input, expected 'p <n> <m>'")
    no, head = lines[0]
    if len(head) != 3 or head[0] != "p":
        raise FormatError(f"line {no}: malformed header, expected 'p <n> <m>'")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise FormatError(f"line {no}: malformed header, n and m must be integers") from None
    if n < 0 or m < 0:
        raise FormatError(f"line {no}: malformed header, n and m must be non-negative")
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"edge count mismatch: header says {m}, found {len(body)} edge lines")
    seen = set()
    for no, fields in body:
        if len(fields) != 2:
            raise FormatError(f"line {no}: an edge line needs exactly two vertices")
        u, v = _ints(no, fields, "vertices")
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {no}: vertex out of range 0..{n - 1}: {u} {v}")
        if u == v:
            raise FormatError(f"line {no}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"line {no}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
    return Graph(n, seen)


def serialize_graph(g: Graph) -> str:
    rows = [f"p {g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(rows) + "\n"


def parse_3dm(text: str) -> ThreeDM:
    lines = _lines(text)
    if not lines:
        raise FormatError("malformed header: empty input, expected 'n t'")
    no, head = lines[0]
    if len(head) != 2:
        raise FormatError(f"line {no}: malformed header, expected 'n t'")
    n, t = _ints(no, head, "header fields")
    if len(lines) - 1 != t:
        raise FormatError(f"triple count mismatch: header says {t}, found {len(lines) - 1}")
    triples = []
    for no, fields in lines[1:]:
        if len(fields) != 3:
            raise FormatError(f"line {no}: a triple needs three indices")
        triples.append(tuple(_ints(no, fields, "indices")))
    try:
        return ThreeDM(n, tuple(triples))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def serialize_3dm(inst: ThreeDM) -> str:
    rows = [f"{inst.n} {len(inst.triples)}"] + [" ".join(map(str, t)) for t in inst.triples]
    return "\n".join(rows) + "\n"


def parse_certificate(text: str) -> PartitionCertificate:
    classes = []
    for no, fields in _lines(text):
        members = _ints(no, fields, "class members")
        if len(set(members)) != len(members):
            raise FormatError(f"line {no}: repeated vertex in a class")
        classes.append(members)
    return PartitionCertificate.from_lists(classes)


def serialize_certificate(cert: PartitionCertificate) -> str:
    return "".join(" ".join(map(str, sorted(c))) + "\n" for c in cert.classes)
