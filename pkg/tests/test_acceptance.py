"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest
(the lines are repeated in the terminal summary).
"""

import math
import random
import time
from functools import lru_cache

from boundedmatch.bench import fit_constant, size_invariant, sweep
from boundedmatch.blossom import KernelGraph, max_weight_k_matching_kernel
from boundedmatch.config import RunConfig
from boundedmatch.graph_store import from_edges
from boundedmatch.hash_membership import (HashBuildFailure, UniversalHash, build_injective,
                                          is_injective)
from boundedmatch.matching import validate_matching
from boundedmatch.testkit import (materialize_h_reduced, oracle_k_matching_exists,
                                  oracle_max_weight_by_size, oracle_max_weight_k_matching,
                                  random_graph)
from boundedmatch.unweighted import find_k_matching
from boundedmatch.weighted import max_weight_k_matching, reduce_graph

N_UNWEIGHTED = 1000
N_WEIGHTED = 1000
KS_UNWEIGHTED = range(1, 7)
KS_WEIGHTED = range(1, 5)
BENCH_KS = (2, 4, 8, 16, 32)
BENCH_SIZES = (10**4, 10**5, 10**6)

RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)


@lru_cache(maxsize=None)
def unweighted_corpus():
    rng = random.Random(20240601)
    return [random_graph(rng, 24) for _ in range(N_UNWEIGHTED)]


@lru_cache(maxsize=None)
def weighted_corpus():
    rng = random.Random(20240602)
    return [random_graph(rng, 14, weighted=True, wrange=(-50, 50)) for _ in range(N_WEIGHTED)]


@lru_cache(maxsize=None)
def unweighted_runs():
    out = []
    for i, g in enumerate(unweighted_corpus()):
        for k in KS_UNWEIGHTED:
            out.append((i, k, find_k_matching(g, k, RunConfig(seed=i))))
    return out


@lru_cache(maxsize=None)
def weighted_runs():
    out = []
    for i, g in enumerate(weighted_corpus()):
        for k in KS_WEIGHTED:
            out.append((i, k, max_weight_k_matching(g, k, RunConfig(seed=i))))
    return out


@lru_cache(maxsize=None)
def bench_rows():
    return sweep(["ugm", "wgm"], BENCH_KS, BENCH_SIZES, seed=0)


def test_criterion_1_unweighted_correctness():
    t0 = time.perf_counter()
    graphs = unweighted_corpus()
    bad = 0
    for i, k, res in unweighted_runs():
        g = graphs[i]
        if res.found != oracle_k_matching_exists(g, k):
            bad += 1
        elif res.found:
            validate_matching(g, res.matching, k)
    total = len(unweighted_runs())
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 120
    record(1, ok, f"{total - bad}/{total} existence answers match, {dt:.1f}s")
    assert ok


def test_criterion_2_weighted_optimality():
    t0 = time.perf_counter()
    graphs = weighted_corpus()
    bad = 0
    for i, k, res in weighted_runs():
        o = oracle_max_weight_k_matching(graphs[i], k)
        want = o.best_weight if o.exists else None
        if res.weight != want:
            bad += 1
        elif res.found:
            assert validate_matching(graphs[i], res.matching, k) == want
    total = len(weighted_runs())
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 180
    record(2, ok, f"{total - bad}/{total} weights exactly optimal, {dt:.1f}s")
    assert ok


def test_criterion_3_reduction_equivalence():
    bad_w = bad_h = checked_h = 0
    for i, k, res in weighted_runs():
        g = weighted_corpus()[i]
        red = res.reduced
        gr = from_edges(g.n, [(e.lo, e.hi, e.wt) for e in red.edges], weighted=True)
        a, b = oracle_max_weight_k_matching(g, k), oracle_max_weight_k_matching(gr, k)
        bad_w += (a.exists, a.best_weight) != (b.exists, b.best_weight)
    for g in unweighted_corpus():
        for k in KS_UNWEIGHTED:
            gh = materialize_h_reduced(g, k)
            if gh is None:
                continue
            checked_h += 1
            bad_h += oracle_k_matching_exists(g, k) != oracle_k_matching_exists(
                from_edges(g.n, gh), k)
    ok = bad_w == 0 and bad_h == 0
    record(3, ok, f"G_R weight mismatches {bad_w}/{len(weighted_runs())}, "
                  f"G_h existence mismatches {bad_h}/{checked_h}")
    assert ok


def test_criterion_4_workspace_bound():
    t0 = time.perf_counter()
    rows = bench_rows()
    dt = time.perf_counter() - t0
    details, ok = [], dt < 300
    for p in ("ugm", "wgm"):
        same = size_invariant(rows, p)
        c = fit_constant(rows, p)
        fits = all(r.peak_workspace_words <= c * r.k * r.k for r in rows if r.pipeline == p)
        ok = ok and all(same.values()) and fits and set(same) == set(BENCH_KS)
        details.append(f"{p}: size-invariant for k={sorted(k for k, s in same.items() if s)} "
                       f"c={c:.2f}")
    record(4, ok, "; ".join(details) + f"; sweep {dt:.1f}s")
    assert ok


def test_criterion_5_pass_bound():
    u = max(r.meter.full_passes for _, _, r in unweighted_runs())
    w = max(r.meter.full_passes for _, _, r in weighted_runs())
    for r in bench_rows():
        if r.pipeline == "ugm":
            u = max(u, r.full_passes)
        else:
            w = max(w, r.full_passes)
    ok = u <= 3 and w <= 2
    record(5, ok, f"max passes ugm={u} (<=3), wgm={w} (<=2)")
    assert ok


def test_criterion_6_hash_statistics():
    rng = random.Random(77)
    h, trials = 64, 2000
    wins = 0
    for _ in range(trials):
        keys = rng.sample(range(10**9), h)
        wins += is_injective(UniversalHash.sample(h * h, rng), keys)
    rate = wins / trials
    floor = 0.5 - 3 * math.sqrt(0.25 / trials)
    fails = 0
    for _ in range(200):
        keys = rng.sample(range(10**9), h)
        try:
            build_injective(keys, epsilon=0.01, rng=rng)
        except HashBuildFailure:
            fails += 1
    ok = rate >= floor and fails / 200 <= 0.05
    record(6, ok, f"single-round success {rate:.3f} (floor {floor:.3f}); "
                  f"build failures {fails}/200 at eps=0.01")
    assert ok


def test_criterion_7_phase_invariant():
    rng = random.Random(31337)
    kernels = phases = 0
    bad = 0
    while kernels < 400:
        g = random_graph(rng, 12, weighted=True, wrange=(-100, 100))
        if g.m == 0:
            continue
        kernels += 1
        kg = KernelGraph(g.n, [(u, v, w) for u, v, w in g.edges()])
        k = g.n // 2
        best = oracle_max_weight_by_size(g, k)
        _, hist = max_weight_k_matching_kernel(kg, k)
        want = [w for w in best[1:] if w is not None]
        phases += len(hist)
        bad += hist != want
    ok = bad == 0
    record(7, ok, f"{kernels - bad}/{kernels} kernels exact after every phase "
                  f"({phases} phases checked)")
    assert ok


def test_criterion_8_determinism():
    graphs = weighted_corpus()
    diff_er = 0
    for i in range(100):
        g = graphs[i]
        for k in KS_WEIGHTED:
            a, _ = reduce_graph(g, k, RunConfig(seed=1))
            b, _ = reduce_graph(g, k, RunConfig(seed=2))
            c, _ = reduce_graph(g, k, RunConfig(deterministic=True))
            diff_er += not (a.edges == b.edges == c.edges)
    diff_u = 0
    for i, k, res in unweighted_runs():
        det = find_k_matching(unweighted_corpus()[i], k, RunConfig(deterministic=True))
        diff_u += (res.matching.edges if res.found else None) != \
                  (det.matching.edges if det.found else None)
    diff_w = 0
    for i, k, res in weighted_runs():
        det = max_weight_k_matching(graphs[i], k, RunConfig(deterministic=True))
        diff_w += (res.weight, res.matching and res.matching.edges) != \
                  (det.weight, det.matching and det.matching.edges)
    ok = diff_er == diff_u == diff_w == 0
    record(8, ok, f"E_R differs across seeds on {diff_er}/400 runs; deterministic mode "
                  f"differs on {diff_u} ugm and {diff_w} wgm answers")
    assert ok


def test_criterion_9_documented_non_goals():
    # The kernel solvers are an Edmonds blossom (O(n m)) and a k-phase
    # primal-dual routine.  Neither the O(N + k^2.5) exponent nor the
    # 2*sqrt(k0)+1 phase bound is claimed; this gate only confirms the
    # implementation runs exactly k weighted phases, as documented.
    rng = random.Random(9)
    counts = set()
    for _ in range(50):
        g = random_graph(rng, 12, weighted=True)
        k = 3
        res = max_weight_k_matching(g, k)
        if res.found:
            counts.add(len(res.history))
    ok = counts == {3}
    record(9, ok, "not reproduced by design: k^2.5 kernel exponent and sqrt(k0) phase "
                  "count; criteria 4 and 5 stand in as resource evidence")
    assert ok


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
