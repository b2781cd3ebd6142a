"""Partition into a prime pattern H, driven by the modular decomposition.

Each subtree is summarised by ``(p, w)``: the most copies of H that fit
inside it and the vertices left over.  A copy of a prime H either lies in
one block or takes at most one vertex per block, so at a node only the
template matters for crossing copies; a mixed program per node decides how
many block copies to dissolve (``y_v``) and how many crossing copies to
form (``x_S``) so as to leave the fewest vertices uncovered.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, bits
from .ilp import IntegerProgram, solve_ip
from .modular import Leaf, ModularTree, is_module_prime, modular_decompose, modular_width, template_of
from .pattern import Outcome, PatternInfo, as_pattern, induced_copies, trivial_outcome


class PatternNotPrime(ValueError):
    pass


@dataclass(frozen=True)
class MwSummary:
    p: int  # copies formed inside the subtree
    w: int  # vertices left uncovered


@dataclass
class MwNodeProgram:
    template: Graph
    copies: list[frozenset[int]]
    program: IntegerProgram
    pattern_size: int
    nodes: int = 0  # branch-and-bound nodes used to solve it

    @property
    def num_int_vars(self) -> int:
        return self.program.num_int_vars

    @property
    def int_var_bound(self) -> int:
        t = self.template.n
        return t + t ** self.pattern_size


def require_prime(info: PatternInfo, strict: bool = True) -> None:
    """``strict`` additionally rejects patterns with a nontrivial module.

    nd(H) = |H| alone is not enough: the gem (P4 plus a dominating vertex)
    has no twins, yet in a host equal to the gem the copy puts four vertices
    into one block of a join and the recursion answers No.
    """
    if info.size == 1:
        return
    if not info.is_prime:
        raise PatternNotPrime("mw requires nd(H) = |H|; use the nd solver or the oracle")
    if strict and not is_module_prime(info.h):
        raise PatternNotPrime(
            "mw requires H without a module M, 1 < |M| < |H|: such an H can spread "
            "several vertices over one block and the per-node program would miss it")


def enumerate_template_copies(template: Graph, h: PatternInfo | Graph | str) -> list[frozenset[int]]:
    info = as_pattern(h)
    require_prime(info, strict=False)
    if template.n < info.size:
        return []
    return [frozenset(bits(c)) for c in induced_copies(template, info)]


def build_node_program(template: Graph, children: list[MwSummary], info: PatternInfo,
                       allow_unlinking: bool = True) -> MwNodeProgram:
    copies = enumerate_template_copies(template, info)
    t = info.size
    total = sum(c.p * t + c.w for c in children)
    prog = IntegerProgram()
    xs = [prog.add_int(f"x{i}", 0, total // t) for i in range(len(copies))]
    ys = [prog.add_int(f"y{v}", 0, c.p if allow_unlinking else 0) for v, c in enumerate(children)]
    rs = [prog.add_cont(f"r{v}") for v in range(len(children))]
    for v, c in enumerate(children):
        # r_v = w_v + t*y_v - sum_{S ∋ v} x_S
        coeffs = {rs[v]: 1, ys[v]: -t}
        for i, s in enumerate(copies):
            if v in s:
                coeffs[xs[i]] = 1
        prog.add_constraint(coeffs, "=", c.w)
    prog.set_objective({r: 1 for r in rs})
    return MwNodeProgram(template, copies, prog, pattern_size=t)


def solve_prime_node(template: Graph, children: list[MwSummary], h: PatternInfo | Graph | str,
                     allow_unlinking: bool = True, log: list | None = None) -> MwSummary:
    info = as_pattern(h)
    if template.n != len(children):
        raise ValueError("one child summary per template vertex is required")
    node = build_node_program(template, children, info, allow_unlinking)
    if log is not None:
        log.append(node)
    if node.num_int_vars > node.int_var_bound:
        raise AssertionError("node program exceeds |T| + |T|^|H| integer variables")
    sol = solve_ip(node.program)
    if sol is None:
        raise AssertionError("node program is always feasible (x = y = 0)")
    node.nodes = sol.nodes
    a = sol.assignment
    for v in range(len(children)):
        if a[f"r{v}"].denominator != 1:
            raise AssertionError("uncovered count r_v is not integral")
    p = sum(c.p - int(a[f"y{v}"]) for v, c in enumerate(children))
    p += sum(int(a[f"x{i}"]) for i in range(len(node.copies)))
    w = sum(int(a[f"r{v}"]) for v in range(len(children)))
    return MwSummary(p, w)


def summarise(tree: ModularTree, info: PatternInfo, allow_unlinking: bool = True,
              log: list | None = None) -> MwSummary:
    if isinstance(tree, Leaf):
        return MwSummary(0, 1)
    kids = [summarise(c, info, allow_unlinking, log) for c in tree.children]
    out = solve_prime_node(template_of(tree), kids, info, allow_unlinking, log)
    size = sum(k.p * info.size + k.w for k in kids)
    if out.p * info.size + out.w != size:
        raise AssertionError("summary does not conserve the subtree's vertices")
    return out


def solve_mw(g: Graph, h: PatternInfo | Graph | str, allow_unlinking: bool = True,
             tree: ModularTree | None = None, log: list | None = None,
             strict: bool = True) -> Outcome:
    """Count-only decision; Yes outcomes carry ``copies`` but no certificate."""
    info = as_pattern(h)
    require_prime(info, strict)
    trivial = trivial_outcome(g, info)
    if trivial is not None:
        return trivial
    if tree is None:
        tree = modular_decompose(g)
    width = modular_width(tree)
    stats: dict = {"mw": width}
    if info.size > width:
        stats["reason"] = "|H| > mw(G)"
        return Outcome(False, stats=stats)
    programs: list = [] if log is None else log
    root = summarise(tree, info, allow_unlinking, programs)
    stats["node_programs"] = [(p.num_int_vars, p.template.n) for p in programs]
    stats["ilp_variables"] = sum(p.num_int_vars for p in programs)
    stats["ilp_nodes"] = sum(p.nodes for p in programs)
    if root.w == 0:
        return Outcome(True, copies=root.p, stats=stats)
    return Outcome(False, stats=stats)

