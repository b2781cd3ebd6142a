"""MSO2 sentence stating that G partitions into copies of a connected pattern H.

The solution is an edge set ``F``; the sentence says that from every vertex
``u`` a walk of at most diam(H) edges of F reaches a vertex ``v`` that
starts a copy ``u1 = v, ..., uk`` whose edges lie in F, whose non-edges do
not, and which no other edge of F touches.

Text syntax::

    exists F: edgeset . <body>         second-order, over edge sets
    forall u: vertex . / exists e1 e2: edge in F .
    u in e                              incidence of a vertex and an edge
    e in F                              membership of an edge in F
    meets(e1, e2)                       two edges share an endpoint
    {u1, u2} in F                       the edge u1u2 exists and belongs to F
    u1 = v, ~(...), &, |                equality and boolean connectives

Nesting: the copy block sits inside the scope of ``v`` so that every
variable is bound where it is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Graph
from .pattern import PatternInfo, as_pattern


@dataclass(frozen=True)
class Var:
    name: str
    sort: str  # vertex | edge | edgeset


@dataclass(frozen=True)
class Exists:
    variables: tuple[Var, ...]
    body: "Formula"
    within: Var | None = None  # bounded edge quantifier "in F"


@dataclass(frozen=True)
class ForAll:
    variables: tuple[Var, ...]
    body: "Formula"
    within: Var | None = None


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Incident:
    vertex: Var
    edge: Var


@dataclass(frozen=True)
class Member:
    edge: Var
    edgeset: Var


@dataclass(frozen=True)
class Meets:
    first: Var
    second: Var


@dataclass(frozen=True)
class PairIn:
    a: Var
    b: Var
    edgeset: Var


@dataclass(frozen=True)
class Equal:
    a: Var
    b: Var


Formula = Union[Exists, ForAll, And, Or, Not, Incident, Member, Meets, PairIn, Equal]


@dataclass(frozen=True)
class MsoSentence:
    formula: Formula
    chain: Formula  # the walk from u to v
    copy: Formula  # the copy started at v, including isolation
    isolation: Formula
    vertex_vars: tuple[Var, ...]
    chain_length: int

    @property
    def text(self) -> str:
        return render(self.formula)


def _and(parts):
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else And(parts)


def _or(parts):
    parts = tuple(parts)
    return parts[0] if len(parts) == 1 else Or(parts)


def emit_mso(h: PatternInfo | Graph | str) -> MsoSentence:
    info = as_pattern(h)
    if not info.is_connected:
        raise ValueError("an MSO2 sentence is emitted only for connected patterns")
    hg = info.h
    k = hg.n
    d = int(info.diameter)
    F = Var("F", "edgeset")
    u = Var("u", "vertex")
    v = Var("v", "vertex")

    if d == 0:
        chain: Formula = Equal(u, v)
    else:
        es = tuple(Var(f"e{i}", "edge") for i in range(1, d + 1))
        links = [Incident(u, es[0])]
        links += [Meets(es[i], es[i + 1]) for i in range(d - 1)]
        links.append(Incident(v, es[-1]))
        chain = Exists(es, _and(links), within=F)

    us = tuple(Var(f"u{i}", "vertex") for i in range(1, k + 1))
    atoms: list[Formula] = [Equal(us[0], v)]
    for i in range(k):
        for j in range(i + 1, k):
            atom = PairIn(us[i], us[j], F)
            atoms.append(atom if hg.has_edge(i, j) else Not(atom))
    e = Var("e", "edge")
    both = [And((Incident(us[i], e), Incident(us[j], e))) for i in range(k) for j in range(i + 1, k)]
    untouched = _and(Not(Incident(x, e)) for x in us)
    isolation = ForAll((e,), _or(both + [untouched]) if both else untouched, within=F)
    copy = Exists(us, _and(atoms + [isolation]))

    formula = Exists((F,), ForAll((u,), Exists((v,), And((chain, copy)))))
    return MsoSentence(formula, chain, copy, isolation, us, d)


def render(f: Formula) -> str:
    if isinstance(f, (Exists, ForAll)):
        word = "exists" if isinstance(f, Exists) else "forall"
        names = " ".join(x.name for x in f.variables)
        if f.within is not None:
            head = f"{word} {names}: {f.variables[0].sort} in {f.within.name}"
        else:
            head = f"{word} {names}: {f.variables[0].sort}"
        return f"{head} . ({render(f.body)})"
    if isinstance(f, And):
        return " & ".join(_wrap(p) for p in f.parts)
    if isinstance(f, Or):
        return " | ".join(_wrap(p) for p in f.parts)
    if isinstance(f, Not):
        return f"~({render(f.body)})"
    if isinstance(f, Incident):
        return f"{f.vertex.name} in {f.edge.name}"
    if isinstance(f, Member):
        return f"{f.edge.name} in {f.edgeset.name}"
    if isinstance(f, Meets):
        return f"meets({f.first.name}, {f.second.name})"
    if isinstance(f, PairIn):
        return f"{{{f.a.name}, {f.b.name}}} in {f.edgeset.name}"
    if isinstance(f, Equal):
        return f"{f.a.name} = {f.b.name}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula) -> str:
    s = render(f)
    return s if isinstance(f, (Incident, Member, Meets, PairIn, Equal, Not)) else f"({s})"


def walk(f: Formula):
    """Pre-order traversal of all sub-formulas."""
    yield f
    if isinstance(f, (Exists, ForAll, Not)):
        yield from walk(f.body)
    elif isinstance(f, (And, Or)):
        for p in f.parts:
            yield from walk(p)


def free_variables(f: Formula, bound: frozenset = frozenset()) -> set[Var]:
    if isinstance(f, (Exists, ForAll)):
        inner = bound | set(f.variables)
        out = free_variables(f.body, frozenset(inner))
        if f.within is not None and f.within not in bound:
            out.add(f.within)
        return out
    if isinstance(f, (And, Or)):
        out = set()
        for p in f.parts:
            out |= free_variables(p, bound)
        return out
    if isinstance(f, Not):
        return free_variables(f.body, bound)
    used = [getattr(f, name) for name in f.__dataclass_fields__]
    return {x for x in used if isinstance(x, Var) and x not in bound}


def structure(sentence: MsoSentence) -> dict:
    """Counts used to check the emitted sentence against the pattern."""
    exists_copy = sentence.copy
    pairs = sum(1 for g in walk(exists_copy) if isinstance(g, PairIn))
    negative = sum(1 for g in walk(exists_copy) if isinstance(g, Not) and isinstance(g.body, PairIn))
    edges_in_chain = 0
    if isinstance(sentence.chain, Exists):
        edges_in_chain = len(sentence.chain.variables)
    return {
        "vertex_variables": len(exists_copy.variables),
        "pair_atoms": pairs,
        "positive_pairs": pairs - negative,
        "negative_pairs": negative,
        "chain_length": edges_in_chain,
    }
