import random

import pytest
from hypothesis import strategies as st

from thicket.graphs import graph_from_edges
from thicket.setsystem import from_masks


@st.composite
def systems(draw, max_domain=5, max_family=8, min_family=0):
    n = draw(st.integers(0, max_domain))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=min_family, max_size=max_family))
    return from_masks(n, masks)


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return graph_from_edges(n, [p for p, k in zip(pairs, keep) if k])


@pytest.fixture
def rng():
    return random.Random(20240611)


# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
