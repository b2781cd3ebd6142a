import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hpartition.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=0, max_n=8, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


# -- acceptance summary ---------------------------------------------------------------

ACCEPTANCE_NAMES = {
    1: "oracle agreement, graphs on <= 7 vertices",
    2: "certificate soundness",
    3: "mw node program size <= |T| + |T|^|H|",
    4: "nd pattern count <= nd(G)^|H|",
    5: "3DM reduction iff",
    6: "disjoint-union composition",
    7: "parameter sanity",
    8: "MSO emitter structure",
    9: "unlinking necessity",
    10: "ILP engine vs enumeration",
}
_acceptance: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_acceptance():
    def record(number: int, passed: bool, detail: str = ""):
        _acceptance[number] = (passed, detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, name in ACCEPTANCE_NAMES.items():
        if number in _acceptance:
            passed, detail = _acceptance[number]
            status = "PASS" if passed else "FAIL"
        else:
            status, detail = "NOT RUN", ""
        suffix = f"  ({detail})" if detail else ""
        terminalreporter.write_line(f"criterion {number:2d} {status:7s} {name}{suffix}")
