"""Maximum-weight k-matching with O(k^2) workspace and two passes.

Edges are ranked by the triple (wt, lo, hi), which makes all weights distinct.
A vertex is large when its degree is at least 8k; its e8k-value is the rank
of its 8k-th heaviest edge.  The reduction keeps at most k(16k-1) edges that
are among the 8k heaviest at both endpoints, which preserves the optimum.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import blossom
from .blossom import KernelGraph
from .bounded_select import TopKBuffer, select_kth
from .config import RunConfig
from .graph_store import AdjacencyGraph, ResourceMeter, iter_lists
from .hash_membership import build_injective, build_ordered_fallback
from .matching import Matching, validate_matching

log = logging.getLogger(__name__)


class TieBreakWeight(NamedTuple):
    wt: int
    lo: int
    hi: int


class _NegInf:
    """Below every TieBreakWeight."""

    def __lt__(self, other):
        return not isinstance(other, _NegInf)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInf)

    def __eq__(self, other):
        return isinstance(other, _NegInf)

    def __hash__(self):
        return 0

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


def tiebreak(u: int, v: int, wt: int) -> TieBreakWeight:
    if u == v:
        raise ValueError("self-loop has no tie-break weight")
    return TieBreakWeight(wt, u, v) if u < v else TieBreakWeight(wt, v, u)


def reduced_edge_cap(k: int) -> int:
    return k * (16 * k - 1)


def _ranked_list(v: int, nbrs, wts) -> list[TieBreakWeight]:
    if wts is None:
        return [tiebreak(v, w, 1) for w in nbrs]
    return [tiebreak(v, w, x) for w, x in zip(nbrs, wts)]


def bounding_list(v: int, nbrs, wts, k: int) -> tuple[list[TieBreakWeight], object]:
    """(8k heaviest incident edges sorted descending, e8k-value)."""
    t = 8 * k
    ranked = _ranked_list(v, nbrs, wts)
    if len(ranked) < t:
        return sorted(ranked, reverse=True), NEG_INF
    cut = select_kth(ranked, t)
    top = sorted((e for e in ranked if e >= cut), reverse=True)
    return top, cut


def e8k_value(g: AdjacencyGraph, v: int, k: int):
    """Rank of the 8k-th heaviest edge at v, or NEG_INF when deg(v) < 8k."""
    inc = g.incident(v)
    _, val = bounding_list(v, [w for w, _ in inc], [x for _, x in inc], k)
    return val


@dataclass
class BoundingSet:
    k: int
    members: list[int]
    e8k: dict[int, TieBreakWeight]
    lists: dict[int, list[TieBreakWeight]]
    table: object = None
    large_seen: int = 0

    @property
    def saturated(self) -> bool:
        return len(self.members) == 8 * self.k

    def __contains__(self, v: int) -> bool:
        return v in self.table

    def value(self, v: int):
        return self.table.lookup(v, NEG_INF)


def _list_words(k: int) -> int:
    return 3 * 8 * k


def build_bounding_set(g: AdjacencyGraph, k: int, config: Optional[RunConfig] = None,
                       meter: Optional[ResourceMeter] = None, rng=None) -> BoundingSet:
    """One pass: stream large vertices through a top-8k selection on (e8k, v)."""
    config = config or RunConfig()
    meter = meter if meter is not None else ResourceMeter()
    rng = rng or config.rng()
    t = 8 * k
    # transient per-vertex list: 2*8k candidates of 3 words
    meter.alloc(2 * _list_words(k), "list-staging")
    large = 0
    with TopKBuffer(t, key=lambda r: r[0], meter=meter, record_words=4 + _list_words(k),
                    randomized=config.randomized_select, rng=rng) as buf:
        for v, nbrs, wts in iter_lists(g, meter):
            if len(nbrs) < t:
                continue
            large += 1
            top, val = bounding_list(v, nbrs, wts, k)
            buf.push(((val, v), top))
        kept = sorted(buf.finish(), key=lambda r: r[0][1])
        members = [r[0][1] for r in kept]
        e8k = {r[0][1]: r[0][0] for r in kept}
        lists = {r[0][1]: r[1] for r in kept}
        meter.alloc(t * (4 + _list_words(k)), "bounding-set")
    meter.free(2 * _list_words(k), "list-staging")
    vals = [e8k[v] for v in members]
    if config.deterministic:
        table = build_ordered_fallback(members, vals, meter=meter)
    else:
        table = build_injective(members, vals, rounds=config.hash_rounds(k, "wgm"),
                                rng=rng, meter=meter)
    return BoundingSet(k, members, e8k, lists, table, large)


def membership_in_GT(e: TieBreakWeight, v: int, bs: BoundingSet) -> bool:
    """Whether e = [v, w] from v's bounding list lies in the trimmed subgraph."""
    w = e.hi if e.lo == v else e.lo
    if w not in bs:
        return True
    return e >= bs.value(w)


@dataclass
class ReducedSubgraph:
    k: int
    edges: list[TieBreakWeight]
    branch: str
    names: list[int] = field(default_factory=list)
    m0: Optional[TieBreakWeight] = None
    initial_size: int = 0
    compactions: int = 0
    second_pass_edges: int = 0

    def edge_set(self) -> set[tuple[int, int]]:
        return {(e.lo, e.hi) for e in self.edges}

    def to_kernel(self) -> KernelGraph:
        ix = {v: i for i, v in enumerate(self.names)}
        return KernelGraph(len(self.names), [(ix[e.lo], ix[e.hi], e.wt) for e in self.edges])


def reduce_subgraph(g: AdjacencyGraph, k: int, bs: BoundingSet,
                    config: Optional[RunConfig] = None,
                    meter: Optional[ResourceMeter] = None) -> ReducedSubgraph:
    config = config or RunConfig()
    meter = meter if meter is not None else ResourceMeter()
    cap = reduced_edge_cap(k)
    t = 8 * k
    meter.alloc(3 * t * t, "E_R-initial")
    er = []
    for v in bs.members:
        for e in bs.lists[v]:
            w = e.hi if e.lo == v else e.lo
            if w in bs:
                if v < w and membership_in_GT(e, v, bs):
                    er.append(e)
            else:
                er.append(e)
    initial = len(er)
    if bs.saturated and not initial > cap:
        raise AssertionError(f"saturated bounding set gave only {initial} edges")

    rng = config.rng()
    buf = TopKBuffer(cap, block=k * k, meter=meter, key=lambda e: e, record_words=3,
                     randomized=config.randomized_select, rng=rng)
    m0 = None
    if initial < cap:
        branch = "rsubg-step4"
        for e in er:
            buf.push(e)
        keep = None
    else:
        branch = "rsubg-step5"
        cut = select_kth(er, cap)
        er = [e for e in er if e >= cut]
        m0 = cut
        for e in er:
            buf.push(e)
        keep = m0
    meter.free(3 * t * t, "E_R-initial")
    added = 0
    for v, nbrs, wts in iter_lists(g, meter):
        if v in bs:
            continue
        # Step-4 branch: every large vertex is in B, so v's list is whole.
        # Step-5 branch: an edge at v ranked >= m0 is already among v's 8k
        # heaviest, so filtering the raw list equals filtering its top 8k.
        for i, w in enumerate(nbrs):
            if w < v or w in bs:
                continue
            e = TieBreakWeight(1 if wts is None else wts[i], v, w)
            if keep is not None and e < keep:
                continue
            buf.push(e)
            added += 1
    final = buf.finish()
    compactions = buf.selections
    buf.close()
    meter.alloc(3 * cap, "E_R")
    red = ReducedSubgraph(k, sorted(final, reverse=True), branch, m0=m0,
                          initial_size=initial, compactions=compactions,
                          second_pass_edges=added)
    assert len(red.edges) <= cap
    deg: dict[int, int] = {}
    for e in red.edges:
        deg[e.lo] = deg.get(e.lo, 0) + 1
        deg[e.hi] = deg.get(e.hi, 0) + 1
    assert all(d <= t for d in deg.values()), "reduced subgraph exceeds the degree cap"
    red.names = sorted(deg)
    meter.alloc(2 * 2 * cap, "renaming")
    return red


@dataclass
class WeightedResult:
    matching: Optional[Matching]
    k: int
    branch: str
    meter: ResourceMeter
    membership: str
    hash_rounds: int = 0
    hash_builds: int = 0
    reduced: Optional[ReducedSubgraph] = None
    history: list[int] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.matching is not None

    @property
    def weight(self) -> Optional[int]:
        return None if self.matching is None else self.matching.weight


def reduce_graph(g: AdjacencyGraph, k: int, config: Optional[RunConfig] = None,
                 meter: Optional[ResourceMeter] = None
                 ) -> tuple[ReducedSubgraph, BoundingSet]:
    config = config or RunConfig()
    meter = meter if meter is not None else ResourceMeter()
    bs = build_bounding_set(g, k, config, meter)
    return reduce_subgraph(g, k, bs, config, meter), bs


def max_weight_k_matching(g: AdjacencyGraph, k: int, config: Optional[RunConfig] = None,
                          meter: Optional[ResourceMeter] = None) -> WeightedResult:
    """Maximum-weight k-matching of g, or ``matching=None`` if g has none."""
    config = config or RunConfig()
    meter = meter if meter is not None else ResourceMeter()
    kind = "ordered" if config.deterministic else "hash"
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return WeightedResult(Matching([], 0), 0, "trivial", meter, kind)
    red, bs = reduce_graph(g, k, config, meter)
    kg = red.to_kernel()
    cap = reduced_edge_cap(k)
    ws = meter.alloc(3 * cap + blossom.weighted_workspace_words(2 * cap, cap), "kernel")
    km, history = blossom.max_weight_k_matching_kernel(kg, k, check=config.check_phases)
    meter.free(ws, "kernel")
    m = None
    if km is not None:
        m = Matching([(red.names[u], red.names[v]) for u, v in km.edges], history[-1])
        validate_matching(g, m, k)
    assert meter.full_passes <= 2
    res = WeightedResult(m, k, red.branch, meter, kind,
                         hash_rounds=bs.table.rounds_used,
                         hash_builds=0 if config.deterministic else 1,
                         reduced=red, history=history)
    log.debug("wgm k=%d branch=%s stats=%s", k, res.branch, meter.snapshot())
    return res
