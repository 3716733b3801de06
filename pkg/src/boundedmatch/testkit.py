"""Brute-force oracles, literal proof-device constructions, and generators.

Nothing here imports the production solvers; the oracles are deliberately
naive and guarded by explicit size limits.
"""

from __future__ import annotations

import itertools
import random
import sys
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .graph_store import AdjacencyGraph, from_arrays, from_edges

MAX_ORACLE_VERTICES = 24
MAX_ENUM_EDGES = 24


class InstanceTooLarge(ValueError):
    pass


@dataclass
class OracleResult:
    exists: bool
    best_weight: Optional[int] = None
    best_k_matching: Optional[list[tuple[int, int]]] = None


def _edge_list(g) -> list[tuple[int, int, int]]:
    if isinstance(g, AdjacencyGraph):
        return list(g.edges())
    return [(e[0], e[1], e[2] if len(e) == 3 else 1) for e in g]


def _n_of(g, edges) -> int:
    if isinstance(g, AdjacencyGraph):
        return g.n
    return 1 + max((max(u, v) for u, v, _ in edges), default=-1)


def _adjacency(n: int, edges) -> list[dict[int, int]]:
    adj: list[dict[int, int]] = [dict() for _ in range(n)]
    for u, v, w in edges:
        adj[u][v] = w
        adj[v][u] = w
    return adj


def oracle_k_matching_exists(g, k: int) -> bool:
    """Exact: does g contain k pairwise disjoint edges?

    Vertex-ordered search: the lowest undecided vertex is left unmatched or
    matched to a free higher neighbour.  Memoised on (vertex, used-mask).
    """
    edges = _edge_list(g)
    n = _n_of(g, edges)
    if n > MAX_ORACLE_VERTICES:
        raise InstanceTooLarge(f"{n} vertices > {MAX_ORACLE_VERTICES}")
    if k <= 0:
        return True
    if 2 * k > n or len(edges) < k:
        return False
    adj = _adjacency(n, edges)
    higher = [[w for w in adj[v] if w > v] for v in range(n)]
    memo: dict[tuple[int, int, int], bool] = {}

    def can(i: int, used: int, need: int) -> bool:
        while i < n and used >> i & 1:
            i += 1
        if need == 0:
            return True
        if i >= n or (n - i - bin(used >> i).count("1")) < 2 * need:
            return False
        key = (i, used, need)
        if key in memo:
            return memo[key]
        ok = can(i + 1, used, need)
        if not ok:
            for w in higher[i]:
                if not used >> w & 1 and can(i + 1, used | (1 << w), need - 1):
                    ok = True
                    break
        memo[key] = ok
        return ok

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    return can(0, 0, k)


def oracle_max_weight_k_matching(g, k: int) -> OracleResult:
    """Exact maximum-weight k-matching by exhaustive vertex-ordered search."""
    edges = _edge_list(g)
    n = _n_of(g, edges)
    if n > MAX_ORACLE_VERTICES:
        raise InstanceTooLarge(f"{n} vertices > {MAX_ORACLE_VERTICES}")
    if k == 0:
        return OracleResult(True, 0, [])
    adj = _adjacency(n, edges)
    higher = [sorted((w, wt) for w, wt in adj[v].items() if w > v) for v in range(n)]
    NONE = None
    memo: dict[tuple[int, int, int], object] = {}

    def best(i: int, used: int, need: int):
        while i < n and used >> i & 1:
            i += 1
        if need == 0:
            return (0, ())
        # remaining free vertices must fit need edges
        if i >= n or (n - i - bin(used >> i).count("1")) < 2 * need:
            return NONE
        key = (i, used, need)
        if key in memo:
            return memo[key]
        top = best(i + 1, used, need)
        for w, wt in higher[i]:
            if not used >> w & 1:
                sub = best(i + 1, used | (1 << w), need - 1)
                if sub is not NONE and (top is NONE or sub[0] + wt > top[0]):
                    top = (sub[0] + wt, ((i, w),) + sub[1])
        memo[key] = top
        return top

    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    res = best(0, 0, k)
    if res is NONE:
        return OracleResult(False)
    return OracleResult(True, res[0], sorted(res[1]))


def oracle_max_weight_by_size(g, kmax: int) -> list[Optional[int]]:
    """Maximum i-matching weight for i = 0..kmax (None where none exists)."""
    return [oracle_max_weight_k_matching(g, i).best_weight for i in range(kmax + 1)]


# second, structurally different oracle: enumerate edge subsets directly

def enum_max_weight_k_matching(g, k: int) -> Optional[int]:
    edges = _edge_list(g)
    if len(edges) > MAX_ENUM_EDGES:
        raise InstanceTooLarge(f"{len(edges)} edges > {MAX_ENUM_EDGES}")
    best = None
    for combo in itertools.combinations(edges, k):
        ends = [x for u, v, _ in combo for x in (u, v)]
        if len(set(ends)) == 2 * k:
            w = sum(e[2] for e in combo)
            if best is None or w > best:
                best = w
    return best


def enum_k_matching_exists(g, k: int) -> bool:
    edges = _edge_list(g)
    if len(edges) > MAX_ENUM_EDGES:
        raise InstanceTooLarge(f"{len(edges)} edges > {MAX_ENUM_EDGES}")
    return any(len({x for u, v, _ in c for x in (u, v)}) == 2 * k
               for c in itertools.combinations(edges, k))


def has_augmenting_path(n: int, edges, matching: Iterable[tuple[int, int]]) -> bool:
    """Brute-force DFS over simple alternating paths (small graphs only)."""
    adj = _adjacency(n, _edge_list(edges))
    mate = {}
    for u, v in matching:
        mate[u], mate[v] = v, u
    free = [v for v in range(n) if v not in mate and adj[v]]

    def dfs(v: int, need_matched: bool, visited: set) -> bool:
        for w in adj[v]:
            if w in visited:
                continue
            is_m = mate.get(v) == w
            if is_m != need_matched:
                continue
            if not need_matched and w not in mate:
                return True
            visited.add(w)
            if dfs(w, not need_matched, visited):
                return True
            visited.discard(w)
        return False

    return any(dfs(s, False, {s}) for s in free)


# --------------------------------------------------------------------------
# literal constructions used only as oracles

def wt_prime(u: int, v: int, w: int) -> tuple[int, int, int]:
    return (w, min(u, v), max(u, v))


def materialize_trimmed_subgraph(g: AdjacencyGraph, k: int) -> set[tuple[int, int]]:
    """Execute the trimming procedure literally on a copy of the edge set.

    Large vertices (degree >= 8k) are processed in ascending order of their
    8k-th heaviest incident edge; each keeps only its 8k heaviest edges in
    the current graph.
    """
    t = 8 * k
    edges = {(u, v): w for u, v, w in g.edges()}
    inc: dict[int, set] = {v: set() for v in range(g.n)}
    for (u, v) in edges:
        inc[u].add((u, v))
        inc[v].add((u, v))

    def key(e):
        return wt_prime(e[0], e[1], edges[e])

    large = [v for v in range(g.n) if len(inc[v]) >= t]
    e8k = {v: sorted(inc[v], key=key, reverse=True)[t - 1] for v in large}
    order = sorted(large, key=lambda v: key(e8k[v]))
    for v in order:
        ranked = sorted(inc[v], key=key, reverse=True)
        for e in ranked[t:]:
            a, b = e
            inc[a].discard(e)
            inc[b].discard(e)
            del edges[e]
    return set(edges)


def trimmed_by_definition(g: AdjacencyGraph, k: int) -> set[tuple[int, int]]:
    """Edges among the 8k heaviest at both endpoints."""
    t = 8 * k
    inc: dict[int, list] = {v: [] for v in range(g.n)}
    for u, v, w in g.edges():
        inc[u].append(wt_prime(u, v, w))
        inc[v].append(wt_prime(u, v, w))
    top = {v: set(sorted(inc[v], reverse=True)[:t]) for v in range(g.n)}
    return {(u, v) for u, v, w in g.edges()
            if wt_prime(u, v, w) in top[u] and wt_prime(u, v, w) in top[v]}


def reduced_subgraph_oracle(g: AdjacencyGraph, k: int) -> set[tuple[int, int]]:
    """The k(16k-1) heaviest edges of the materialized trimmed subgraph."""
    gt = materialize_trimmed_subgraph(g, k)
    w = {(u, v): wt for u, v, wt in g.edges()}
    ranked = sorted(gt, key=lambda e: wt_prime(e[0], e[1], w[e]), reverse=True)
    return set(ranked[: k * (16 * k - 1)])


def materialize_h_reduced(g: AdjacencyGraph, k: int) -> Optional[list[tuple[int, int]]]:
    """Full h-reduced graph, or None when there are >= k large vertices.

    Each large vertex drops its last deg-2k edges to small vertices; isolated
    vertices vanish implicitly since only edges are returned.
    """
    deg = [len(g.neighbors(v)) for v in range(g.n)]
    large = {v for v in range(g.n) if deg[v] >= 2 * k}
    if len(large) >= k:
        return None
    edges = {(u, v) for u, v, _ in g.edges()}
    for v in sorted(large):
        drop = deg[v] - 2 * k
        small_nbrs = [w for w in g.neighbors(v) if w not in large]
        for w in reversed(small_nbrs):
            if drop == 0:
                break
            edges.discard((min(v, w), max(v, w)))
            drop -= 1
    return sorted(edges)


def relabel_dense(edges) -> tuple[int, list[tuple]]:
    verts = sorted({x for e in edges for x in e[:2]})
    ix = {v: i for i, v in enumerate(verts)}
    return len(verts), [(ix[e[0]], ix[e[1]]) + tuple(e[2:]) for e in edges]


# --------------------------------------------------------------------------
# generators

class InfeasibleSpec(ValueError):
    pass


def _weights(rng: np.random.Generator, m: int, wrange: Optional[tuple[int, int]]):
    if wrange is None:
        return None
    lo, hi = wrange
    if lo > hi:
        raise InfeasibleSpec("empty weight range")
    return rng.integers(lo, hi + 1, size=m, dtype=np.int64)


def erdos_renyi(n: int, p: float, seed: int = 0,
                weights: Optional[tuple[int, int]] = None,
                verify: bool = True) -> AdjacencyGraph:
    if n < 0 or not 0 <= p <= 1:
        raise InfeasibleSpec("need n >= 0 and 0 <= p <= 1")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    us, vs = iu[keep], ju[keep]
    return from_arrays(n, us, vs, _weights(rng, len(us), weights), verify=verify)


def disjoint_edges(m: int, seed: int = 0, weights: Optional[tuple[int, int]] = None,
                   verify: bool = True) -> AdjacencyGraph:
    if m < 0:
        raise InfeasibleSpec("m must be >= 0")
    rng = np.random.default_rng(seed)
    us = np.arange(0, 2 * m, 2, dtype=np.int64)
    return from_arrays(2 * m, us, us + 1, _weights(rng, m, weights), verify=verify)


def planted_large_vertices(n: int, count: int, degree: int, seed: int = 0,
                           background: str = "cycle",
                           weights: Optional[tuple[int, int]] = None,
                           verify: bool = True) -> AdjacencyGraph:
    """``count`` hubs (vertices 0..count-1) each joined to ``degree`` random
    non-hub vertices, over a sparse background on the non-hubs.

    Background 'cycle' joins the non-hubs in one random cycle, 'matching'
    pairs them, 'none' adds nothing.  Non-hub degree is at most
    count + 2, so exactly ``count`` vertices reach degree >= ``degree`` as
    long as count + 2 < degree.
    """
    rest = n - count
    if count < 0 or degree < 1 or rest < degree:
        raise InfeasibleSpec(f"degree {degree} needs at least {degree} non-hub vertices")
    if count > 0 and count + 2 >= degree:
        raise InfeasibleSpec("degree must exceed count + 2 to keep hubs distinguishable")
    rng = np.random.default_rng(seed)
    us, vs = [], []
    for h in range(count):
        nb = rng.choice(rest, size=degree, replace=False) + count
        us.append(np.full(degree, h, dtype=np.int64))
        vs.append(nb.astype(np.int64))
    perm = rng.permutation(rest).astype(np.int64) + count
    if background == "cycle" and rest >= 3:
        us.append(perm)
        vs.append(np.roll(perm, -1))
    elif background == "matching":
        half = rest // 2
        us.append(perm[0:2 * half:2])
        vs.append(perm[1:2 * half:2])
    elif background not in ("none", "cycle"):
        raise InfeasibleSpec(f"unknown background {background!r}")
    u = np.concatenate(us) if us else np.zeros(0, dtype=np.int64)
    v = np.concatenate(vs) if vs else np.zeros(0, dtype=np.int64)
    return from_arrays(n, u, v, _weights(rng, len(u), weights), verify=verify)


def planted_for_size(size: int, k: int, seed: int = 0, weighted: bool = False,
                     count: Optional[int] = None) -> AdjacencyGraph:
    """Planted graph whose N = n + m is close to ``size``.

    Hubs have degree 8k + 8, large in both pipelines; the background cycle
    supplies small-edges.
    """
    count = max(1, k // 2) if count is None else count
    degree = 8 * k + 8
    hub_edges = count * degree
    # n + (n - count) + hub_edges ~= size
    n = max((size - hub_edges + count) // 2, count + degree + 3)
    return planted_large_vertices(n, count, degree, seed=seed, background="cycle",
                                  weights=(-1000, 1000) if weighted else None,
                                  verify=False)


def random_graph(rng: random.Random, n_max: int, weighted: bool = False,
                 wrange: tuple[int, int] = (-50, 50)) -> AdjacencyGraph:
    """Small random graph with an edge probability swept over (0, 1)."""
    n = rng.randint(1, n_max)
    p = rng.choice([0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9])
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v, rng.randint(*wrange)) if weighted else (u, v))
    return from_edges(n, edges, weighted=weighted)


def gen_graph(family: str, seed: int = 0, **params) -> AdjacencyGraph:
    if family == "erdos-renyi":
        return erdos_renyi(params["n"], params["p"], seed, params.get("weights"))
    if family == "disjoint-edges":
        return disjoint_edges(params["m"], seed, params.get("weights"))
    if family == "planted-large-vertices":
        return planted_large_vertices(params["n"], params["count"], params["degree"], seed,
                                      params.get("background", "cycle"),
                                      params.get("weights"))
    raise InfeasibleSpec(f"unknown family {family!r}")
