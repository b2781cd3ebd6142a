"""Exact mixed-integer linear programming over the rationals.

Branch-and-bound over the integer variables; each node solves its LP
relaxation with a bounded-variable primal simplex in ``Fraction``
arithmetic (Bland's rule, two phases).  No tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, inf
from typing import Mapping

from .pattern import BudgetExhausted

Number = int | Fraction

OPS = ("=", "<=", ">=")


class UnboundedError(ValueError):
    pass


@dataclass
class IntVar:
    name: str
    lower: int
    upper: int


@dataclass
class ContVar:
    name: str
    lower: Fraction = Fraction(0)


@dataclass
class Constraint:
    coeffs: dict[str, Fraction]
    op: str
    rhs: Fraction


@dataclass
class IntegerProgram:
    int_vars: list[IntVar] = field(default_factory=list)
    cont_vars: list[ContVar] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    objective: dict[str, Fraction] = field(default_factory=dict)

    def add_int(self, name: str, lower: int, upper: int) -> str:
        if lower < 0 or upper < lower:
            raise ValueError(f"bad bounds [{lower}, {upper}] for {name}")
        self._check_fresh(name)
        self.int_vars.append(IntVar(name, int(lower), int(upper)))
        return name

    def add_cont(self, name: str, lower: Number = 0) -> str:
        if lower < 0:
            raise ValueError("continuous lower bounds must be non-negative")
        self._check_fresh(name)
        self.cont_vars.append(ContVar(name, Fraction(lower)))
        return name

    def add_constraint(self, coeffs: Mapping[str, Number], op: str, rhs: Number) -> None:
        if op not in OPS:
            raise ValueError(f"unknown relation {op!r}")
        self.constraints.append(Constraint({k: Fraction(v) for k, v in coeffs.items() if v},
                                           op, Fraction(rhs)))

    def set_objective(self, coeffs: Mapping[str, Number]) -> None:
        self.objective = {k: Fraction(v) for k, v in coeffs.items() if v}

    def _check_fresh(self, name):
        if name in self.names():
            raise ValueError(f"variable {name} declared twice")

    def names(self) -> list[str]:
        return [v.name for v in self.int_vars] + [v.name for v in self.cont_vars]

    @property
    def num_int_vars(self) -> int:
        return len(self.int_vars)

    def validate(self) -> None:
        declared = set(self.names())
        for c in self.constraints:
            missing = set(c.coeffs) - declared
            if missing:
                raise ValueError(f"constraint uses undeclared variables {sorted(missing)}")
        missing = set(self.objective) - declared
        if missing:
            raise ValueError(f"objective uses undeclared variables {sorted(missing)}")

    def is_feasible_point(self, point: Mapping[str, Number]) -> bool:
        for v in self.int_vars:
            x = point[v.name]
            if x != int(x) or not v.lower <= x <= v.upper:
                return False
        for v in self.cont_vars:
            if point[v.name] < v.lower:
                return False
        for c in self.constraints:
            lhs = sum(a * point[k] for k, a in c.coeffs.items())
            if not _holds(lhs, c.op, c.rhs):
                return False
        return True

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        return sum((a * point[k] for k, a in self.objective.items()), Fraction(0))

    def to_lp_text(self) -> str:
        """Human-readable LP-format dump (for debugging only)."""

        def expr(coeffs):
            if not coeffs:
                return "0"
            parts = []
            for k, a in coeffs.items():
                sign = "-" if a < 0 else "+"
                parts.append(f"{sign} {abs(a)} {k}")
            s = " ".join(parts)
            return s[2:] if s.startswith("+ ") else s

        lines = ["Minimize", f" obj: {expr(self.objective)}", "Subject To"]
        for i, c in enumerate(self.constraints):
            lines.append(f" c{i}: {expr(c.coeffs)} {c.op} {c.rhs}")
        lines.append("Bounds")
        for v in self.int_vars:
            lines.append(f" {v.lower} <= {v.name} <= {v.upper}")
        for v in self.cont_vars:
            lines.append(f" {v.name} >= {v.lower}")
        if self.int_vars:
            lines.append("General")
            lines.append(" " + " ".join(v.name for v in self.int_vars))
        lines.append("End")
        return "\n".join(lines)


def _holds(lhs, op, rhs) -> bool:
    if op == "=":
        return lhs == rhs
    if op == "<=":
        return lhs <= rhs
    return lhs >= rhs


@dataclass
class Solution:
    assignment: dict[str, Fraction]
    value: Fraction
    nodes: int = 0


# -- LP relaxation -------------------------------------------------------------


class _LP:
    """min c.x s.t. A x = b, 0 <= x <= u (u may be inf), b >= 0 after sign fixing.

    Columns are structural variables then slacks; artificials are appended
    internally for phase one.
    """

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], cost: list[Fraction],
                 upper: list[float | Fraction]):
        self.rows = rows
        self.rhs = rhs
        self.cost = cost
        self.upper = upper

    def solve(self):
        m = len(self.rows)
        ncols = len(self.cost)
        if any(u < 0 for u in self.upper):
            return None
        n = ncols + m
        T = []
        beta = []
        for i in range(m):
            row = list(self.rows[i])
            b = self.rhs[i]
            if b < 0:
                row = [-a for a in row]
                b = -b
            row.extend(Fraction(1) if j == i else Fraction(0) for j in range(m))
            T.append(row)
            beta.append(b)
        upper = list(self.upper) + [inf] * m
        at_upper = [False] * n
        basis = [ncols + i for i in range(m)]

        phase1 = [Fraction(0)] * ncols + [Fraction(1)] * m
        status = _simplex(T, beta, basis, upper, at_upper, phase1)
        if status != "optimal":
            raise AssertionError("phase one cannot be unbounded")
        infeas = sum(beta[i] for i in range(m) if basis[i] >= ncols)
        if infeas > 0:
            return None
        for j in range(ncols, n):
            upper[j] = Fraction(0)
        cost = list(self.cost) + [Fraction(0)] * m
        status = _simplex(T, beta, basis, upper, at_upper, cost)
        if status == "unbounded":
            raise UnboundedError("LP relaxation is unbounded")
        x = [Fraction(0)] * n
        for j in range(n):
            if at_upper[j]:
                x[j] = upper[j]
        for i, j in enumerate(basis):
            x[j] = beta[i]
        value = sum((cost[j] * x[j] for j in range(ncols)), Fraction(0))
        return x[:ncols], value


def _simplex(T, beta, basis, upper, at_upper, cost) -> str:
    m = len(T)
    n = len(cost)
    is_basic = [False] * n
    for j in basis:
        is_basic[j] = True
    while True:
        # Reduced costs d_j = c_j - c_B . T[:, j]; Bland: first improving index.
        cb = [cost[j] for j in basis]
        enter = -1
        direction = 0
        for j in range(n):
            if is_basic[j] or upper[j] == 0:
                continue
            d = cost[j]
            for i in range(m):
                if cb[i] and T[i][j]:
                    d -= cb[i] * T[i][j]
            if d < 0 and not at_upper[j]:
                enter, direction = j, 1
                break
            if d > 0 and at_upper[j]:
                enter, direction = j, -1
                break
        if enter < 0:
            return "optimal"
        # Ratio test: basic i moves at rate -direction * T[i][enter].
        theta = upper[enter]
        leave = -1
        leave_to_upper = False
        for i in range(m):
            a = T[i][enter]
            if not a:
                continue
            rate = -direction * a
            bi = basis[i]
            if rate < 0:
                lim = beta[i] / -rate
                to_up = False
            else:
                if upper[bi] == inf:
                    continue
                lim = (upper[bi] - beta[i]) / rate
                to_up = True
            if lim < theta or (lim == theta and leave >= 0 and bi < basis[leave]):
                theta = lim
                leave = i
                leave_to_upper = to_up
        if theta == inf:
            return "unbounded"
        if leave < 0:
            # Entering variable just flips to its other bound.
            for i in range(m):
                a = T[i][enter]
                if a:
                    beta[i] -= direction * a * theta
            at_upper[enter] = direction == 1
            continue
        for i in range(m):
            a = T[i][enter]
            if a and i != leave:
                beta[i] -= direction * a * theta
        start = upper[enter] if at_upper[enter] else Fraction(0)
        entering_value = start + direction * theta
        old = basis[leave]
        # Pivot on (leave, enter).
        prow = T[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [a / piv for a in prow]
            T[leave] = prow
        for i in range(m):
            if i == leave:
                continue
            f = T[i][enter]
            if f:
                row = T[i]
                T[i] = [a - f * p if p else a for a, p in zip(row, prow)]
        beta[leave] = entering_value
        basis[leave] = enter
        is_basic[enter] = True
        is_basic[old] = False
        at_upper[enter] = False
        at_upper[old] = leave_to_upper


# -- branch and bound -------------------------------------------------------------


class _Compiled:
    def __init__(self, prog: IntegerProgram):
        prog.validate()
        self.prog = prog
        names = prog.names()
        self.index = {name: i for i, name in enumerate(names)}
        self.nint = len(prog.int_vars)
        self.lower = [Fraction(v.lower) for v in prog.int_vars] + [v.lower for v in prog.cont_vars]
        nstruct = len(names)
        slack_rows = [i for i, c in enumerate(prog.constraints) if c.op != "="]
        self.ncols = nstruct + len(slack_rows)
        self.rows = []
        self.rhs = []
        slack_col = nstruct
        for c in prog.constraints:
            row = [Fraction(0)] * self.ncols
            shift = Fraction(0)
            for k, a in c.coeffs.items():
                j = self.index[k]
                row[j] = a
                shift += a * self.lower[j]
            if c.op == "<=":
                row[slack_col] = Fraction(1)
                slack_col += 1
            elif c.op == ">=":
                row[slack_col] = Fraction(-1)
                slack_col += 1
            self.rows.append(row)
            self.rhs.append(c.rhs - shift)
        self.cost = [Fraction(0)] * self.ncols
        self.const = Fraction(0)
        for k, a in prog.objective.items():
            j = self.index[k]
            self.cost[j] = a
            self.const += a * self.lower[j]
        self.cont_upper = [inf] * (nstruct - self.nint) + [inf] * (self.ncols - nstruct)

    def relax(self, lo: list[int], hi: list[int]):
        # Integer variable j lives in [lo[j], hi[j]] (original scale); shift it to [0, hi-lo].
        rhs = list(self.rhs)
        const = self.const
        for j in range(self.nint):
            extra = lo[j] - self.lower[j]
            if extra:
                for i, row in enumerate(self.rows):
                    if row[j]:
                        rhs[i] -= row[j] * extra
                const += self.cost[j] * extra
        upper = [Fraction(hi[j] - lo[j]) for j in range(self.nint)] + self.cont_upper
        res = _LP(self.rows, rhs, self.cost, upper).solve()
        if res is None:
            return None
        x, value = res
        vals = [x[j] + lo[j] for j in range(self.nint)]
        vals += [x[j] + self.lower[j] for j in range(self.nint, len(self.lower))]
        return vals, value + const


def solve_ip(prog: IntegerProgram, node_limit: int | None = None) -> Solution | None:
    """Minimise the objective; ``None`` means the program is infeasible."""
    comp = _Compiled(prog)
    nint = comp.nint
    best: list = [None, None]  # values, objective
    nodes = 0
    stack = [([v.lower for v in prog.int_vars], [v.upper for v in prog.int_vars])]
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise BudgetExhausted("ilp", nodes)
        res = comp.relax(lo, hi)
        if res is None:
            continue
        vals, value = res
        if best[1] is not None and value >= best[1]:
            continue
        branch = -1
        best_frac = None
        for j in range(nint):
            frac = vals[j] - floor(vals[j])
            if frac:
                dist = abs(frac - Fraction(1, 2))
                if best_frac is None or dist < best_frac:
                    best_frac, branch = dist, j
        if branch < 0:
            best[0], best[1] = vals, value
            continue
        f = floor(vals[branch])
        up_lo, down_hi = list(lo), list(hi)
        up_lo[branch] = f + 1
        down_hi[branch] = f
        # Depth-first, down branch explored first.
        stack.append((up_lo, hi))
        stack.append((lo, down_hi))
    if best[0] is None:
        return None
    names = prog.names()
    assignment = {name: Fraction(best[0][i]) for i, name in enumerate(names)}
    for v in prog.int_vars:
        assignment[v.name] = Fraction(int(assignment[v.name]))
    if not prog.is_feasible_point(assignment):
        raise AssertionError("branch-and-bound produced an infeasible point")
    return Solution(assignment, prog.evaluate(assignment), nodes)
