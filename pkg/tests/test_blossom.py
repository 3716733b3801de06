import itertools
import random

import pytest
from hypothesis import given

from boundedmatch.blossom import (KernelGraph, PhaseInvariantError, augment, best_match,
                                  greedy_maximal_matching, max_gain_augment,
                                  max_matching_blossom, max_weight_k_matching_kernel)
from boundedmatch.matching import Matching
from boundedmatch.testkit import (has_augmenting_path, oracle_max_weight_by_size,
                                  oracle_max_weight_k_matching, random_graph)

from conftest import small_graphs


def kg_of(g):
    return KernelGraph(g.n, [(u, v, w) if g.weighted else (u, v) for u, v, w in g.edges()])


def cycle_kg(n):
    return KernelGraph(n, [(i, (i + 1) % n) for i in range(n)])


def max_size(g):
    sizes = oracle_max_weight_by_size(g if g.weighted else _unit(g), g.n // 2)
    return max(i for i, w in enumerate(sizes) if w is not None)


def _unit(g):
    from boundedmatch.graph_store import from_edges
    return from_edges(g.n, [(u, v, 1) for u, v, _ in g.edges()], weighted=True)


def test_greedy_examples():
    assert len(greedy_maximal_matching(KernelGraph(0, []))) == 0
    p4 = KernelGraph(4, [(0, 1), (1, 2), (2, 3)])
    m = greedy_maximal_matching(p4)
    assert len(m) in (1, 2) and m.is_disjoint()
    cov = m.covered()
    assert not any(u not in cov and v not in cov for u, v in p4.edges)


def test_c5():
    assert len(best_match(cycle_kg(5), 2)) == 2
    assert best_match(cycle_kg(5), 3) is None


def test_blossom_trap():
    # triangle 0-1-2 hanging off path 2-3-4-5; the maximum has size 3
    kg = KernelGraph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)])
    assert len(max_matching_blossom(kg)) == 3


def test_k4_and_petersen():
    k4 = KernelGraph(4, list(itertools.combinations(range(4), 2)))
    assert len(max_matching_blossom(k4)) == 2
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    assert len(max_matching_blossom(KernelGraph(10, outer + spokes + inner))) == 5


def test_random_maximum_and_berge():
    rng = random.Random(11)
    for _ in range(500):
        g = random_graph(rng, 14)
        kg = kg_of(g)
        m = max_matching_blossom(kg)
        assert m.is_disjoint() and len(m) == max_size(g)
        assert not has_augmenting_path(kg.n, kg.edges, m.edges)
        assert len(m) <= 2 * len(greedy_maximal_matching(kg))


@given(small_graphs(max_n=10))
def test_best_match_monotone(g):
    kg = kg_of(g)
    verdicts = [best_match(kg, k) is not None for k in range(1, 7)]
    assert verdicts == sorted(verdicts, reverse=True)


def test_weighted_examples():
    tri = KernelGraph(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)])
    m, hist = max_weight_k_matching_kernel(tri, 1)
    assert hist == [3] and m.edges == [(0, 2)]
    p3 = KernelGraph(3, [(0, 1, 5), (1, 2, 7)])
    assert max_weight_k_matching_kernel(p3, 2)[0] is None


def test_max_gain_examples():
    one = KernelGraph(2, [(0, 1, 7)])
    p = max_gain_augment(one, Matching([], 0))
    assert p.gain == 7 and [tuple(sorted(e)) for e in p.edges()] == [(0, 1)]
    p3 = KernelGraph(3, [(0, 1, 5), (1, 2, 7)])
    assert max_gain_augment(p3, Matching([(0, 1)], 5)) is None


def test_max_gain_detects_bad_precondition():
    p3 = KernelGraph(4, [(0, 1, 5), (1, 2, 7), (2, 3, 1)])
    with pytest.raises(PhaseInvariantError):
        max_gain_augment(p3, Matching([(0, 1)], 5), check=True)


def test_random_kernels_phase_by_phase():
    rng = random.Random(5)
    for _ in range(500):
        g = random_graph(rng, 12, weighted=True, wrange=(-100, 100))
        kg = kg_of(g)
        best = oracle_max_weight_by_size(g, 4)
        m, hist = max_weight_k_matching_kernel(kg, 4, check=True)
        want = [w for w in best[1:] if w is not None]
        assert hist == want
        for k in range(1, 5):
            o = oracle_max_weight_k_matching(g, k)
            got, _ = max_weight_k_matching_kernel(kg, k)
            assert (got is not None) == o.exists
            if got is not None:
                assert kg.weight_of(got.edges) == o.best_weight


def test_stateless_augment_agrees_with_phases():
    rng = random.Random(8)
    for _ in range(150):
        g = random_graph(rng, 10, weighted=True)
        kg = kg_of(g)
        best = oracle_max_weight_by_size(g, 5)
        m = Matching([], 0)
        for i in range(1, 6):
            p = max_gain_augment(kg, m, check=True)
            if best[i] is None:
                assert p is None
                break
            m = augment(m, p)
            assert m.is_disjoint() and m.weight == best[i] == kg.weight_of(m.edges)
