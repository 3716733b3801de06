import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundedmatch.config import RunConfig
from boundedmatch.graph_store import ResourceMeter, from_edges
from boundedmatch.hash_membership import HashBuildFailure, build_injective
from boundedmatch.matching import validate_matching
from boundedmatch.testkit import (disjoint_edges, materialize_h_reduced,
                                  oracle_k_matching_exists, planted_large_vertices,
                                  random_graph)
from boundedmatch.unweighted import (build_h_reduced, collect_large_vertices,
                                     find_k_matching, kernel_edge_bound, matching_from_cap,
                                     matching_from_large, small_edge_cap)

from conftest import complete, complete_bipartite, path, small_graphs, star, triangle


def test_caps():
    assert small_edge_cap(2, 0) == 10
    assert kernel_edge_bound(3, 1) == 6 + 18


def test_collect_examples():
    m = ResourceMeter()
    assert collect_large_vertices(star(10), 2, m) == ([0], False)
    assert m.full_passes == 1
    assert collect_large_vertices(path(5), 3, ResourceMeter()) == ([], False)
    assert collect_large_vertices(complete_bipartite(4, 4), 2, ResourceMeter()) == ([0, 1], True)
    with pytest.raises(ValueError):
        collect_large_vertices(star(3), 0, ResourceMeter())


# a clique needs 2k+1 vertices for degree 2k
@pytest.mark.parametrize("g,k", [(star(2), 1), (complete_bipartite(4, 4), 2), (complete(7), 3)])
def test_matching_from_large(g, k):
    large, sat = collect_large_vertices(g, k, ResourceMeter())
    assert sat
    meter = ResourceMeter()
    m = matching_from_large(g, large, k, RunConfig(), random.Random(0), meter)
    validate_matching(g, m, k)
    assert meter.random_reads <= k * (2 * k - 1)


def _member(large):
    return build_injective(large, rng=random.Random(0))


def test_h_reduced_whole_graph():
    g = disjoint_edges(2)
    kern, _ = build_h_reduced(g, 2, [], _member([]), ResourceMeter())
    assert sorted(kern.edges()) == [(0, 1), (2, 3)] and kern.names == [0, 1, 2, 3]


def test_h_reduced_cap_then_cap_matching():
    g = disjoint_edges(10)
    kern, small = build_h_reduced(g, 2, [], _member([]), ResourceMeter())
    assert kern is None and len(small) == 10
    m = matching_from_cap(g, small, 2, [], _member([]), RunConfig(), random.Random(0),
                          ResourceMeter())
    validate_matching(g, m, 2)


def test_large_vertex_keeps_exactly_2k():
    # k = 2, a hub of degree 3k = 6 plus a few small edges
    edges = [(0, i) for i in range(1, 7)] + [(7, 8)]
    g = from_edges(9, edges)
    large, _ = collect_large_vertices(g, 2, ResourceMeter())
    kern, _ = build_h_reduced(g, 2, large, _member(large), ResourceMeter())
    assert len(kern.retained[0]) == 4
    assert 0 not in [x for e in kern.small_edges for x in e]


def test_cap_matching_with_one_large_vertex():
    # k = 2, h = 1, (4k-3)(k-h) = 5 small-edges
    hub = [(0, i) for i in range(1, 6)]
    small = [(10 + 2 * i, 11 + 2 * i) for i in range(5)]
    g = from_edges(20, hub + small)
    res = find_k_matching(g, 2)
    assert res.branch == "ugm-step4"
    validate_matching(g, res.matching, 2)


def test_triangle():
    r = find_k_matching(triangle(), 1)
    assert r.found and len(r.matching) == 1
    assert not find_k_matching(triangle(), 2).found
    assert find_k_matching(triangle(), 0).matching.edges == []


def test_kernel_matches_materialized():
    rng = random.Random(9)
    for _ in range(300):
        g = random_graph(rng, 20)
        for k in (1, 2, 3):
            full = materialize_h_reduced(g, k)
            if full is None:
                continue
            res = find_k_matching(g, k)
            if res.kernel is not None:
                assert set(res.kernel.edges()) <= set(full)
                for v in res.kernel.large:
                    assert len(res.kernel.retained[v]) == 2 * k


@given(small_graphs(max_n=14), st.integers(1, 5), st.booleans(), st.integers(0, 99))
def test_agrees_with_oracle(g, k, det, seed):
    res = find_k_matching(g, k, RunConfig(deterministic=det, seed=seed))
    assert res.found == oracle_k_matching_exists(g, k)
    assert res.meter.full_passes <= 3
    if res.found:
        validate_matching(g, res.matching, k)


def test_every_branch_reached():
    seen = set()
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, 16)
        seen.add(find_k_matching(g, rng.randint(1, 4)).branch)
    assert seen == {"ugm-step2", "ugm-step4", "ugm-step5"}


def test_hash_failure_surfaces(monkeypatch):
    import boundedmatch.unweighted as uw

    def always_fail(keys, **kw):
        raise HashBuildFailure(1, len(keys))

    monkeypatch.setattr(uw, "build_injective", always_fail)
    with pytest.raises(HashBuildFailure):
        find_k_matching(star(3), 3)
    assert find_k_matching(star(3), 3, RunConfig(deterministic=True)).found is False


def test_store_untouched():
    g = planted_large_vertices(400, 3, 30, seed=2)
    before = g.checksum()
    for k in (1, 2, 4, 8):
        find_k_matching(g, k)
    assert g.checksum() == before
