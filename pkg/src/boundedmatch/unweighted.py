"""k-matching in an unweighted graph with O(k^2) workspace and <= 3 passes.

Pipeline:
  1. one pass collects up to k vertices of degree >= 2k ("large");
  2. k large vertices: match each to a fresh neighbour directly;
  3. otherwise scan once more, keeping 2k edges per large vertex and up to
     (4k-3)(k-h) edges between small vertices;
  4. if that cap is reached a k-matching is built greedily;
  5. else the kernel is small and is solved exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from . import blossom
from .blossom import KernelGraph
from .config import RunConfig
from .graph_store import AdjacencyGraph, ResourceMeter, iter_lists, probe
from .hash_membership import (build_injective, build_ordered_fallback, free_set,
                              make_set)
from .matching import Matching, validate_matching

log = logging.getLogger(__name__)


def small_edge_cap(k: int, h: int) -> int:
    return (4 * k - 3) * (k - h)


def kernel_edge_bound(k: int, h: int) -> int:
    return 2 * k * h + small_edge_cap(k, h)


@dataclass
class HReducedGraph:
    """Kernel of the unweighted pipeline, in original vertex ids plus a
    dense renaming (kernel id i <-> ``names[i]``)."""

    k: int
    large: list[int]
    retained: dict[int, list[int]]
    small_edges: list[tuple[int, int]]
    names: list[int] = field(default_factory=list)

    @property
    def h(self) -> int:
        return len(self.large)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in self.large:
            for w in self.retained[v]:
                if w not in self.retained or v < w:
                    out.append((v, w) if v < w else (w, v))
        out.extend(self.small_edges)
        return out

    def to_kernel(self) -> KernelGraph:
        ix = {v: i for i, v in enumerate(self.names)}
        return KernelGraph(len(self.names), [(ix[u], ix[v]) for u, v in self.edges()])


@dataclass
class KMatchResult:
    matching: Optional[Matching]
    k: int
    branch: str
    meter: ResourceMeter
    membership: str
    hash_rounds: int = 0
    hash_builds: int = 0
    kernel: Optional[HReducedGraph] = None

    @property
    def found(self) -> bool:
        return self.matching is not None


def _membership(keys, config: RunConfig, rounds: int, rng, meter: ResourceMeter):
    if config.deterministic:
        return build_ordered_fallback(keys, meter=meter)
    return build_injective(keys, rounds=rounds, rng=rng, meter=meter)


def collect_large_vertices(g: AdjacencyGraph, k: int, meter: ResourceMeter
                           ) -> tuple[list[int], bool]:
    """First (by id) up to k vertices of degree >= 2k, and whether k were found."""
    if k < 1:
        raise ValueError("k must be >= 1")
    meter.alloc(k, "large")
    meter.charge_pass()
    off = g._py()[0]
    t = 2 * k
    large = []
    for v in range(g.n):
        if off[v + 1] - off[v] >= t:
            large.append(v)
            if len(large) == k:
                break
    return large, len(large) == k


def matching_from_large(g: AdjacencyGraph, large: list[int], k: int,
                        config: RunConfig, rng, meter: ResourceMeter) -> Matching:
    """Match each of k large vertices to a neighbour outside the exclusion set."""
    assert len(large) == k
    q = make_set(2 * k, config.deterministic, rng, meter)
    for v in large:
        q.add(v)
    meter.alloc(2 * k, "matching")
    picked = []
    for v in large:
        for i in range(2 * k - 1):
            w, _ = probe(g, v, i, meter)
            if w not in q:
                picked.append((v, w))
                q.add(w)
                break
        else:
            raise AssertionError(f"large vertex {v} has no free neighbour among 2k-1")
    free_set(q, meter)
    return Matching(picked)


def build_h_reduced(g: AdjacencyGraph, k: int, large: list[int], member,
                    meter: ResourceMeter) -> tuple[Optional[HReducedGraph], list[tuple[int, int]]]:
    """One pass building the kernel.

    Returns (kernel, []) when the scan completes, or (None, small_edges) when
    (4k-3)(k-h) small-edges were collected first.
    """
    h = len(large)
    assert h < k
    cap = small_edge_cap(k, h)
    t = 2 * k
    meter.alloc(2 * cap, "small-edges")
    meter.alloc(t * h, "retained")
    # per-vertex staging while reading one large list: large nbrs + 2k small
    meter.alloc(t + h, "list-staging")
    retained: dict[int, list[int]] = {}
    small_edges: list[tuple[int, int]] = []
    capped = False
    for v, nbrs, _ in iter_lists(g, meter):
        if len(nbrs) >= t:
            big, small = [], []
            for w in nbrs:
                if w in member:
                    big.append(w)
                elif len(small) < t:
                    small.append(w)
            retained[v] = big + small[: t - len(big)]
            continue
        for w in nbrs:
            if w > v and w not in member:
                small_edges.append((v, w))
                if len(small_edges) == cap:
                    capped = True
                    break
        if capped:
            break
    meter.free(t + h, "list-staging")
    if capped:
        return None, small_edges
    kern = HReducedGraph(k, list(large), retained, small_edges)
    # two-stage vertex recording: small-edge endpoints first, then the far
    # ends of retained large-vertex edges
    verts = {x for e in small_edges for x in e}
    for v in large:
        verts.add(v)
        verts.update(retained[v])
    kern.names = sorted(verts)
    meter.alloc(2 * 2 * kernel_edge_bound(k, h), "renaming")
    return kern, []


def matching_from_cap(g: AdjacencyGraph, small_edges: list[tuple[int, int]], k: int,
                      large: list[int], member, config: RunConfig, rng,
                      meter: ResourceMeter) -> Matching:
    """Greedy k-h disjoint small-edges, then one edge per large vertex."""
    h = len(large)
    assert len(small_edges) >= small_edge_cap(k, h)
    covered = make_set(2 * k, config.deterministic, rng, meter)
    meter.alloc(2 * k, "matching")
    picked = []
    for u, v in small_edges:
        if len(picked) == k - h:
            break
        if u not in covered and v not in covered:
            picked.append((u, v))
            covered.add(u)
            covered.add(v)
    assert len(picked) == k - h, "small-edge supply must yield k-h disjoint edges"
    for v in large:
        for i in range(2 * k - 1):
            w, _ = probe(g, v, i, meter)
            if w not in member and w not in covered:
                picked.append((v, w))
                covered.add(w)
                break
        else:
            raise AssertionError(f"large vertex {v} has no free small neighbour")
    free_set(covered, meter)
    return Matching(picked)


def find_k_matching(g: AdjacencyGraph, k: int, config: Optional[RunConfig] = None,
                    meter: Optional[ResourceMeter] = None) -> KMatchResult:
    """A k-matching of g, or a result with ``matching=None`` if none exists."""
    config = config or RunConfig()
    meter = meter or ResourceMeter()
    kind = "ordered" if config.deterministic else "hash"
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return KMatchResult(Matching([]), 0, "trivial", meter, kind)
    rng = config.rng()
    large, saturated = collect_large_vertices(g, k, meter)
    if saturated:
        m = matching_from_large(g, large, k, config, rng, meter)
        res = KMatchResult(m, k, "ugm-step2", meter, kind)
    else:
        h = len(large)
        rounds = config.hash_rounds(k, "ugm")
        member = _membership(large, config, rounds, rng, meter)
        kern, small = build_h_reduced(g, k, large, member, meter)
        if kern is None:
            m = matching_from_cap(g, small, k, large, member, config, rng, meter)
            res = KMatchResult(m, k, "ugm-step4", meter, kind)
        else:
            kg = kern.to_kernel()
            assert kg.m <= kernel_edge_bound(k, h)
            cap = kernel_edge_bound(k, h)
            ws = meter.alloc(2 * cap + blossom.cardinality_workspace_words(2 * cap, cap),
                             "kernel")
            km = blossom.best_match(kg, k)
            meter.free(ws, "kernel")
            m = None
            if km is not None:
                m = Matching([(kern.names[u], kern.names[v]) for u, v in km.edges])
            res = KMatchResult(m, k, "ugm-step5", meter, kind, kernel=kern)
        res.hash_rounds = member.rounds_used
        res.hash_builds = 0 if config.deterministic else 1
    if res.matching is not None:
        validate_matching(g, res.matching, k)
    assert meter.full_passes <= 3
    log.debug("ugm k=%d branch=%s stats=%s", k, res.branch, meter.snapshot())
    return res
