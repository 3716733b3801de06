import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from boundedmatch.graph_store import from_edges

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def small_graphs(draw, max_n=12, weighted=False, wmin=-50, wmax=50):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))
                  if pairs else st.just([]))
    if weighted:
        ws = draw(st.lists(st.integers(wmin, wmax), min_size=len(chosen),
                           max_size=len(chosen)))
        return from_edges(n, [(u, v, w) for (u, v), w in zip(chosen, ws)], weighted=True)
    return from_edges(n, chosen, weighted=False)


def triangle(weights=None):
    if weights is None:
        return from_edges(3, [(0, 1), (1, 2), (0, 2)])
    a, b, c = weights
    return from_edges(3, [(0, 1, a), (1, 2, b), (0, 2, c)], weighted=True)


def path(n, weights=None):
    if weights is None:
        return from_edges(n, [(i, i + 1) for i in range(n - 1)])
    return from_edges(n, [(i, i + 1, w) for i, w in enumerate(weights)], weighted=True)


def cycle(n):
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n):
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a, b):
    return from_edges(a + b, [(u, a + v) for u in range(a) for v in range(b)])


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
