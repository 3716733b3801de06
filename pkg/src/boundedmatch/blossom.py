"""Exact matching solvers for O(k^2)-size kernels.

Unweighted: greedy maximal matching, then Edmonds' blossom algorithm when the
greedy matching is too small.

Weighted: a primal-dual blossom algorithm that performs one augmentation per
stage and never stops on a zero vertex dual.  All exposed vertices carry the
same dual, so after stage i the matching is a maximum-weight i-matching and
each stage augments along a maximum weight-gain path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .matching import Matching, norm_edge


@dataclass
class KernelGraph:
    """Dense-ID graph handed to a solver; edges are (u, v) or (u, v, w)."""

    n: int
    edges: list[tuple] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return bool(self.edges) and len(self.edges[0]) == 3

    def weight_of(self, pairs) -> int:
        wt = {norm_edge(e[0], e[1]): (e[2] if len(e) == 3 else 1) for e in self.edges}
        return sum(wt[norm_edge(u, v)] for u, v in pairs)


@dataclass
class AugmentingPath:
    vertices: list[int]
    gain: int

    def edges(self) -> list[tuple[int, int]]:
        return [norm_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]


def cardinality_workspace_words(n: int, m: int) -> int:
    # adjacency (2m + n + 1) and seven per-vertex arrays
    return 2 * m + 8 * n + 1


def weighted_workspace_words(n: int, m: int) -> int:
    # edges, endpoints, incidence, allowedge; ~11 arrays over 2n vertices+blossoms
    return 8 * m + 22 * n


# --------------------------------------------------------------------------
# unweighted

def greedy_maximal_matching(kg: KernelGraph) -> Matching:
    used = [False] * kg.n
    picked = []
    for e in kg.edges:
        u, v = e[0], e[1]
        if not used[u] and not used[v]:
            used[u] = used[v] = True
            picked.append((u, v))
    return Matching(picked)


def max_matching_blossom(kg: KernelGraph, initial: Optional[Matching] = None) -> Matching:
    """Maximum-cardinality matching by repeated single-root blossom search."""
    n = kg.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for e in kg.edges:
        adj[e[0]].append(e[1])
        adj[e[1]].append(e[0])
    match = [-1] * n
    if initial is not None:
        for u, v in initial.edges:
            match[u], match[v] = v, u

    def find_path(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = [root]
        head = 0

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = find_path(root)
        v = end
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return Matching([(u, match[u]) for u in range(n) if match[u] > u])


def best_match(kg: KernelGraph, k: int) -> Optional[Matching]:
    """A k-matching of the kernel, or None if none exists."""
    if k == 0:
        return Matching([])
    greedy = greedy_maximal_matching(kg)
    if len(greedy) >= k:
        return Matching(greedy.edges[:k])
    full = max_matching_blossom(kg, initial=greedy)
    if len(full) >= k:
        return Matching(full.edges[:k])
    return None


# --------------------------------------------------------------------------
# weighted

class PhaseMatcher:
    """Primal-dual weighted blossom matcher, one augmentation per :meth:`phase`.

    Duals are kept in the scaled form slack(e) = y_u + y_w - 2*wt(e), so with
    integer weights every quantity stays integral.
    """

    def __init__(self, kg: KernelGraph):
        n = kg.n
        self.n = n
        self.edges = [(e[0], e[1], e[2] if len(e) == 3 else 1) for e in kg.edges]
        nedge = len(self.edges)
        self.endpoint = [self.edges[p // 2][p % 2] for p in range(2 * nedge)]
        self.neighbend: list[list[int]] = [[] for _ in range(n)]
        for k, (i, j, _w) in enumerate(self.edges):
            self.neighbend[i].append(2 * k + 1)
            self.neighbend[j].append(2 * k)
        maxweight = max([0] + [w for _i, _j, w in self.edges])
        self.mate = [-1] * n
        self.label = [0] * (2 * n)
        self.labelend = [-1] * (2 * n)
        self.inblossom = list(range(n))
        self.blossomparent = [-1] * (2 * n)
        self.blossomchilds: list = [None] * (2 * n)
        self.blossombase = list(range(n)) + [-1] * n
        self.blossomendps: list = [None] * (2 * n)
        self.bestedge = [-1] * (2 * n)
        self.blossombestedges: list = [None] * (2 * n)
        self.unusedblossoms = list(range(n, 2 * n))
        self.dualvar = [maxweight] * n + [0] * n
        self.allowedge = [False] * nedge
        self.queue: list[int] = []
        self.size = 0
        self.weight = 0
        self.exhausted = False

    # ---- helpers

    def slack(self, k: int) -> int:
        i, j, wt = self.edges[k]
        return self.dualvar[i] + self.dualvar[j] - 2 * wt

    def leaves(self, b: int):
        if b < self.n:
            yield b
        else:
            for t in self.blossomchilds[b]:
                if t < self.n:
                    yield t
                else:
                    yield from self.leaves(t)

    def assign_label(self, w: int, t: int, p: int) -> None:
        b = self.inblossom[w]
        assert self.label[w] == 0 and self.label[b] == 0
        self.label[w] = self.label[b] = t
        self.labelend[w] = self.labelend[b] = p
        self.bestedge[w] = self.bestedge[b] = -1
        if t == 1:
            self.queue.extend(self.leaves(b))
        else:
            base = self.blossombase[b]
            assert self.mate[base] >= 0
            self.assign_label(self.endpoint[self.mate[base]], 1, self.mate[base] ^ 1)

    def scan_blossom(self, v: int, w: int) -> int:
        label, labelend, inblossom = self.label, self.labelend, self.inblossom
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = self.blossombase[b]
                break
            assert label[b] == 1
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = self.endpoint[labelend[b]]
                b = inblossom[v]
                assert label[b] == 2
                v = self.endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(self, base: int, k: int) -> None:
        v, w, _wt = self.edges[k]
        inblossom, labelend, endpoint = self.inblossom, self.labelend, self.endpoint
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = self.unusedblossoms.pop()
        self.blossombase[b] = base
        self.blossomparent[b] = -1
        self.blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        self.blossomchilds[b] = path
        self.blossomendps[b] = endps
        while bv != bb:
            self.blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            self.blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        assert self.label[bb] == 1
        self.label[b] = 1
        labelend[b] = labelend[bb]
        self.dualvar[b] = 0
        for x in self.leaves(b):
            if self.label[inblossom[x]] == 2:
                self.queue.append(x)
            inblossom[x] = b
        bestedgeto = {}
        for sub in path:
            if self.blossombestedges[sub] is None:
                nblists = [[p // 2 for p in self.neighbend[x]] for x in self.leaves(sub)]
            else:
                nblists = [self.blossombestedges[sub]]
            for nblist in nblists:
                for kk in nblist:
                    i, j, _ = self.edges[kk]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if (bj != b and self.label[bj] == 1 and
                            (bj not in bestedgeto or
                             self.slack(kk) < self.slack(bestedgeto[bj]))):
                        bestedgeto[bj] = kk
            self.blossombestedges[sub] = None
            self.bestedge[sub] = -1
        self.blossombestedges[b] = [bestedgeto[x] for x in sorted(bestedgeto)]
        self.bestedge[b] = -1
        for kk in self.blossombestedges[b]:
            if self.bestedge[b] == -1 or self.slack(kk) < self.slack(self.bestedge[b]):
                self.bestedge[b] = kk

    def expand_blossom(self, b: int, endstage: bool) -> None:
        n = self.n
        label, labelend, endpoint = self.label, self.labelend, self.endpoint
        for s in self.blossomchilds[b]:
            self.blossomparent[s] = -1
            if s < n:
                self.inblossom[s] = s
            elif endstage and self.dualvar[s] == 0:
                self.expand_blossom(s, endstage)
            else:
                for x in self.leaves(s):
                    self.inblossom[x] = s
        if not endstage and label[b] == 2:
            childs = self.blossomchilds[b]
            endps = self.blossomendps[b]
            entrychild = self.inblossom[endpoint[labelend[b] ^ 1]]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[endps[j - endptrick] ^ endptrick ^ 1]] = 0
                self.assign_label(endpoint[p ^ 1], 2, p)
                self.allowedge[endps[j - endptrick] // 2] = True
                j += jstep
                p = endps[j - endptrick] ^ endptrick
                self.allowedge[p // 2] = True
                j += jstep
            bv = childs[j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            self.bestedge[bv] = -1
            j += jstep
            while childs[j] != entrychild:
                bv = childs[j]
                if label[bv] == 1:
                    j += jstep
                    continue
                found = -1
                for x in self.leaves(bv):
                    if label[x] != 0:
                        found = x
                        break
                if found != -1:
                    assert label[found] == 2
                    assert self.inblossom[found] == bv
                    label[found] = 0
                    label[endpoint[self.mate[self.blossombase[bv]]]] = 0
                    self.assign_label(found, 2, labelend[found])
                j += jstep
        label[b] = labelend[b] = -1
        self.blossomchilds[b] = self.blossomendps[b] = None
        self.blossombase[b] = -1
        self.blossombestedges[b] = None
        self.bestedge[b] = -1
        self.unusedblossoms.append(b)

    def augment_blossom(self, b: int, v: int) -> None:
        n = self.n
        endpoint = self.endpoint
        t = v
        while self.blossomparent[t] != b:
            t = self.blossomparent[t]
        if t >= n:
            self.augment_blossom(t, v)
        childs = self.blossomchilds[b]
        endps = self.blossomendps[b]
        i = j = childs.index(t)
        if i & 1:
            j -= len(childs)
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = childs[j]
            p = endps[j - endptrick] ^ endptrick
            if t >= n:
                self.augment_blossom(t, endpoint[p])
            j += jstep
            t = childs[j]
            if t >= n:
                self.augment_blossom(t, endpoint[p ^ 1])
            self.mate[endpoint[p]] = p ^ 1
            self.mate[endpoint[p ^ 1]] = p
        self.blossomchilds[b] = childs[i:] + childs[:i]
        self.blossomendps[b] = endps[i:] + endps[:i]
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]]
        assert self.blossombase[b] == v

    def augment_matching(self, k: int) -> None:
        v, w, _wt = self.edges[k]
        endpoint, inblossom, labelend = self.endpoint, self.inblossom, self.labelend
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                assert self.label[bs] == 1
                if bs >= self.n:
                    self.augment_blossom(bs, s)
                self.mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                assert self.label[bt] == 2
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                assert self.blossombase[bt] == t
                if bt >= self.n:
                    self.augment_blossom(bt, j)
                self.mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    # ---- one stage

    def mate_pairs(self) -> list[tuple[int, int]]:
        return [(v, self.endpoint[self.mate[v]]) for v in range(self.n)
                if self.mate[v] >= 0 and v < self.endpoint[self.mate[v]]]

    def phase(self) -> Optional[AugmentingPath]:
        """Augment once along a maximum weight-gain path; None if none exists."""
        if self.exhausted:
            return None
        n = self.n
        before = self.mate_pairs()
        label, inblossom, bestedge = self.label, self.inblossom, self.bestedge
        for i in range(2 * n):
            label[i] = 0
            bestedge[i] = -1
        for i in range(n, 2 * n):
            self.blossombestedges[i] = None
        self.allowedge = [False] * len(self.edges)
        self.queue = []
        for v in range(n):
            if self.mate[v] == -1 and label[inblossom[v]] == 0:
                self.assign_label(v, 1, -1)
        augmented = False
        while True:
            while self.queue and not augmented:
                v = self.queue.pop()
                assert label[inblossom[v]] == 1
                for p in self.neighbend[v]:
                    k = p // 2
                    w = self.endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = None
                    if not self.allowedge[k]:
                        kslack = self.slack(k)
                        if kslack <= 0:
                            self.allowedge[k] = True
                    if self.allowedge[k]:
                        if label[inblossom[w]] == 0:
                            self.assign_label(w, 2, p ^ 1)
                        elif label[inblossom[w]] == 1:
                            base = self.scan_blossom(v, w)
                            if base >= 0:
                                self.add_blossom(base, k)
                            else:
                                self.augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            assert label[inblossom[w]] == 2
                            label[w] = 2
                            self.labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < self.slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < self.slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break
            # dual update; exposed-vertex duals are never a stopping condition
            deltatype = -1
            delta = deltaedge = deltablossom = None
            for v in range(n):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = self.slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta, deltatype, deltaedge = d, 2, bestedge[v]
            for b in range(2 * n):
                if self.blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    ks = self.slack(bestedge[b])
                    assert ks % 2 == 0
                    d = ks // 2
                    if deltatype == -1 or d < delta:
                        delta, deltatype, deltaedge = d, 3, bestedge[b]
            for b in range(n, 2 * n):
                if (self.blossombase[b] >= 0 and self.blossomparent[b] == -1 and
                        label[b] == 2 and (deltatype == -1 or self.dualvar[b] < delta)):
                    delta, deltatype, deltablossom = self.dualvar[b], 4, b
            if deltatype == -1:
                break
            for v in range(n):
                lb = label[inblossom[v]]
                if lb == 1:
                    self.dualvar[v] -= delta
                elif lb == 2:
                    self.dualvar[v] += delta
            for b in range(n, 2 * n):
                if self.blossombase[b] >= 0 and self.blossomparent[b] == -1:
                    if label[b] == 1:
                        self.dualvar[b] += delta
                    elif label[b] == 2:
                        self.dualvar[b] -= delta
            if deltatype == 2:
                self.allowedge[deltaedge] = True
                i, j, _ = self.edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i, j = j, i
                self.queue.append(i)
            elif deltatype == 3:
                self.allowedge[deltaedge] = True
                i, _j, _ = self.edges[deltaedge]
                self.queue.append(i)
            else:
                self.expand_blossom(deltablossom, False)
        for b in range(n, 2 * n):
            if (self.blossomparent[b] == -1 and self.blossombase[b] >= 0 and
                    label[b] == 1 and self.dualvar[b] == 0):
                self.expand_blossom(b, True)
        if not augmented:
            self.exhausted = True
            return None
        after = self.mate_pairs()
        path = _path_from_difference(before, after, self.edges)
        self.size += 1
        self.weight += path.gain
        return path

    def matching(self) -> Matching:
        return Matching(self.mate_pairs(), self.weight)


def _weight_lookup(edges: Sequence[tuple]) -> dict:
    return {norm_edge(e[0], e[1]): (e[2] if len(e) == 3 else 1) for e in edges}


def _path_from_difference(old: list, new: list, edges: Sequence[tuple],
                          wt: Optional[dict] = None) -> AugmentingPath:
    """The single augmenting path in old XOR new (one augmentation apart)."""
    comps = _augmenting_components(old, new)
    assert len(comps) == 1, "one augmentation must change exactly one path"
    return _as_path(comps[0], set(map(lambda e: norm_edge(*e), old)),
                    wt if wt is not None else _weight_lookup(edges))


def _augmenting_components(old: list, new: list) -> list[list[int]]:
    """Vertex sequences of the components of old XOR new that are paths with
    more new edges than old ones (i.e. augmenting relative to old)."""
    so = {norm_edge(*e) for e in old}
    sn = {norm_edge(*e) for e in new}
    diff = so ^ sn
    adj: dict[int, list[int]] = {}
    for u, v in diff:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    covered_old = {x for e in so for x in e}
    seen = set()
    out = []
    for start in sorted(adj):
        if start in seen or len(adj[start]) != 1 or start in covered_old:
            continue
        seq = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seq.append(cur)
            seen.add(cur)
        if seq[-1] not in covered_old and len(seq) % 2 == 0:
            out.append(seq)
    return out


def _as_path(seq: list[int], old_edges: set, wt: dict) -> AugmentingPath:
    gain = 0
    for a, b in zip(seq, seq[1:]):
        e = norm_edge(a, b)
        gain += -wt[e] if e in old_edges else wt[e]
    return AugmentingPath(seq, gain)


class PhaseInvariantError(AssertionError):
    pass


def max_gain_augment(kg: KernelGraph, m: Matching, check: bool = False
                     ) -> Optional[AugmentingPath]:
    """Maximum weight-gain augmenting path relative to ``m``.

    ``m`` must be a maximum-weight |m|-matching.  A maximum (|m|+1)-matching
    M* is computed from scratch; every augmenting component of m XOR M* then
    has gain wt(M*) - wt(m), the largest possible.
    """
    i = len(m)
    solver = PhaseMatcher(kg)
    for _ in range(i):
        if solver.phase() is None:
            raise PhaseInvariantError(f"kernel has no {i}-matching")
    wt = _weight_lookup(kg.edges)
    if check:
        have = sum(wt[e] for e in m.edges)
        if have != solver.weight:
            raise PhaseInvariantError(
                f"matching weight {have} is not the maximum {i}-matching weight {solver.weight}")
    if solver.phase() is None:
        return None
    comps = _augmenting_components(m.edges, solver.mate_pairs())
    assert comps, "an (i+1)-matching always leaves an augmenting component"
    old = {norm_edge(*e) for e in m.edges}
    return max((_as_path(c, old, wt) for c in comps), key=lambda p: p.gain)


def augment(m: Matching, path: AugmentingPath) -> Matching:
    pe = set(path.edges())
    new = {norm_edge(*e) for e in m.edges} ^ pe
    w = None if m.weight is None else m.weight + path.gain
    return Matching(sorted(new), w)


def max_weight_k_matching_kernel(kg: KernelGraph, k: int, check: bool = False
                                 ) -> tuple[Optional[Matching], list[int]]:
    """Run k phases from the empty matching.

    Returns (matching or None, weights after each completed phase).
    """
    solver = PhaseMatcher(kg)
    history = []
    for i in range(k):
        path = solver.phase()
        if path is None:
            return None, history
        history.append(solver.weight)
        if check and path.gain != history[-1] - (history[-2] if i else 0):
            raise PhaseInvariantError("phase gain does not match weight change")
    return solver.matching(), history
