"""Choose a solver for an instance, run it and package the result."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .graph import Graph
from .modular import is_module_prime, modular_decompose, modular_width
from .nd import neighborhood_diversity
from .oracle import DEFAULT_BUDGET, solve_oracle
from .pattern import BudgetExhausted, PartitionCertificate, PatternInfo, as_pattern, verify_certificate
from .solver_mw import PatternNotPrime, require_prime, solve_mw
from .solver_nd import solve_nd
from .solver_tw import DEFAULT_STATE_BUDGET, solve_tw
from .treedecomp import tree_decompose

STRATEGIES = ("auto", "oracle", "nd", "mw", "tw")
YES, NO, EXHAUSTED = "yes", "no", "budget-exhausted"


class StrategyError(ValueError):
    """The requested strategy does not apply to this pattern."""


@dataclass
class DispatchConfig:
    nd_cap: int = 8
    tw_cap: int = 8
    budget: int | None = None  # oracle search nodes / tw DP states


@dataclass
class SolveReport:
    answer: str
    certificate: PartitionCertificate | None
    strategy: str  # the backend that actually ran
    stats: dict = field(default_factory=dict)

    def to_text(self) -> str:
        """Key-value report, one ``key: value`` per line."""
        rows = [f"answer: {self.answer}", f"strategy: {self.strategy}"]
        for key in sorted(self.stats):
            rows.append(f"{key}: {self.stats[key]}")
        if self.certificate is not None:
            rows.append(f"classes: {len(self.certificate)}")
            for c in self.certificate.classes:
                rows.append("class: " + " ".join(map(str, sorted(c))))
        return "\n".join(rows) + "\n"


def measure(g: Graph) -> dict:
    td = tree_decompose(g, "heuristic")
    mw = modular_width(modular_decompose(g)) if g.n else 0
    return {"nd": neighborhood_diversity(g), "mw": mw, "tw": td.width}


def check_strategy(strategy: str, info: PatternInfo) -> None:
    if strategy not in STRATEGIES:
        raise StrategyError(f"unknown strategy {strategy!r}; choose from {', '.join(STRATEGIES)}")
    if strategy == "mw":
        try:
            require_prime(info)
        except PatternNotPrime as exc:
            raise StrategyError(str(exc)) from None
    if strategy == "tw" and not info.is_connected:
        raise StrategyError("tw requires a connected H")


def choose(g: Graph, info: PatternInfo, params: dict, config: DispatchConfig) -> str:
    if info.size == 1 or g.n % info.size:
        return "oracle"  # decided by the shared trivial checks
    if info.size > 1 and info.is_prime and is_module_prime(info.h):
        return "mw"
    if info.is_connected and params["tw"] <= config.tw_cap:
        return "tw"
    if params["nd"] <= config.nd_cap:
        return "nd"
    return "oracle"


def _run(strategy: str, g: Graph, info: PatternInfo, config: DispatchConfig):
    if strategy == "oracle":
        return solve_oracle(g, info, config.budget or DEFAULT_BUDGET)
    if strategy == "nd":
        return solve_nd(g, info)
    if strategy == "mw":
        return solve_mw(g, info)
    return solve_tw(g, info, state_budget=config.budget or DEFAULT_STATE_BUDGET)


def _find_certificate(g: Graph, info: PatternInfo, params: dict, config: DispatchConfig):
    # The mw backend only counts; a second backend supplies the classes when it can.
    backend = "tw" if info.is_connected and params["tw"] <= config.tw_cap else "oracle"
    try:
        out = _run(backend, g, info, config)
    except BudgetExhausted:
        return None, "none (budget exhausted)"
    if not out.yes:
        raise AssertionError(f"mw answered yes but {backend} answered no")
    return out.certificate, backend


def dispatch(g: Graph, h: PatternInfo | Graph | str, strategy: str = "auto",
             config: DispatchConfig | None = None) -> SolveReport:
    config = config or DispatchConfig()
    info = as_pattern(h)
    check_strategy(strategy, info)
    start = time.perf_counter()
    stats = measure(g)
    backend = choose(g, info, stats, config) if strategy == "auto" else strategy
    try:
        out = _run(backend, g, info, config)
    except BudgetExhausted as exc:
        stats["wall_ms"] = round((time.perf_counter() - start) * 1000, 3)
        stats["search_nodes"] = exc.used
        return SolveReport(EXHAUSTED, None, backend, stats)
    stats["ilp_variables"] = out.stats.get("ilp_variables", 0)
    stats["search_nodes"] = (out.stats.get("search_nodes") or out.stats.get("dp_states")
                             or out.stats.get("ilp_nodes") or 0)
    if "reason" in out.stats:
        stats["reason"] = out.stats["reason"]
    if out.copies is not None:
        stats["copies"] = out.copies
    cert = out.certificate
    if out.yes and cert is None and strategy == "auto":
        cert, stats["certificate_from"] = _find_certificate(g, info, stats, config)
    if out.yes and cert is not None and not verify_certificate(g, info, cert):
        raise AssertionError(f"{backend} produced a certificate that does not verify")
    stats["wall_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return SolveReport(YES if out.yes else NO, cert if out.yes else None, backend, stats)
