"""Read-only adjacency-list store for the size-N input, plus the resource meter.

The store is the only place that holds O(N) data.  Algorithms read it through
:func:`iter_lists` (one full pass, charged to a :class:`ResourceMeter`) or
through :func:`probe` (a bounded number of random reads), and never mutate it.
"""

from __future__ import annotations

import hashlib
import io
import struct
from dataclasses import dataclass, field
from typing import BinaryIO, Callable, Iterator, Optional

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

BINARY_MAGIC = b"ADJBIN01"


class GraphFormatError(ValueError):
    """Raised when an input file violates the adjacency format or graph invariants."""


@dataclass
class ResourceMeter:
    """Counters for one run.  Workspace is charged explicitly in words.

    Buffers are charged at their allocated capacity, not their fill level, so
    the peak reflects what a fixed-size implementation would reserve.
    """

    peak_workspace_words: int = 0
    full_passes: int = 0
    random_reads: int = 0
    current_words: int = 0
    _tags: dict = field(default_factory=dict, repr=False)

    def alloc(self, words: int, tag: str = "") -> int:
        if words < 0:
            raise ValueError("negative allocation")
        self.current_words += words
        if tag:
            self._tags[tag] = self._tags.get(tag, 0) + words
        if self.current_words > self.peak_workspace_words:
            self.peak_workspace_words = self.current_words
        return words

    def free(self, words: int, tag: str = "") -> None:
        self.current_words -= words
        if tag:
            self._tags[tag] = self._tags.get(tag, 0) - words
        assert self.current_words >= 0, "meter freed more than allocated"

    def charge_pass(self) -> None:
        self.full_passes += 1

    def snapshot(self) -> dict:
        return {
            "peak_workspace_words": self.peak_workspace_words,
            "full_passes": self.full_passes,
            "random_reads": self.random_reads,
        }


class AdjacencyGraph:
    """Immutable CSR adjacency store.

    ``offsets[v]:offsets[v+1]`` indexes v's neighbor list in ``targets`` (and
    ``weights`` when the graph is weighted).  Every undirected edge appears in
    both endpoint lists.
    """

    __slots__ = ("n", "m", "offsets", "targets", "weights", "_lists")

    def __init__(self, offsets: np.ndarray, targets: np.ndarray,
                 weights: Optional[np.ndarray] = None):
        offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        targets = np.ascontiguousarray(targets, dtype=np.int64)
        if weights is not None:
            weights = np.ascontiguousarray(weights, dtype=np.int64)
        for arr in (offsets, targets, weights):
            if arr is not None:
                arr.flags.writeable = False
        self.n = len(offsets) - 1
        if len(targets) % 2:
            raise GraphFormatError("odd number of adjacency entries")
        self.m = len(targets) // 2
        self.offsets = offsets
        self.targets = targets
        self.weights = weights
        self._lists = None

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    @property
    def size(self) -> int:
        """N = n + m."""
        return self.n + self.m

    def _py(self):
        # plain-list views of the same data, for fast per-entry iteration
        if self._lists is None:
            w = self.weights.tolist() if self.weights is not None else None
            self._lists = (self.offsets.tolist(), self.targets.tolist(), w)
        return self._lists

    def neighbors(self, v: int) -> list[int]:
        off, tgt, _ = self._py()
        return tgt[off[v]:off[v + 1]]

    def incident(self, v: int) -> list[tuple[int, int]]:
        """(neighbor, weight) pairs; weight is 1 for unweighted graphs."""
        off, tgt, wts = self._py()
        a, b = off[v], off[v + 1]
        if wts is None:
            return [(w, 1) for w in tgt[a:b]]
        return list(zip(tgt[a:b], wts[a:b]))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Each undirected edge once as (lo, hi, weight)."""
        off, tgt, wts = self._py()
        for v in range(self.n):
            for i in range(off[v], off[v + 1]):
                w = tgt[i]
                if v < w:
                    yield v, w, (wts[i] if wts is not None else 1)

    def checksum(self) -> str:
        h = hashlib.sha256()
        h.update(self.offsets.tobytes())
        h.update(self.targets.tobytes())
        if self.weights is not None:
            h.update(self.weights.tobytes())
        return h.hexdigest()

    def __repr__(self) -> str:
        kind = "weighted" if self.weighted else "unweighted"
        return f"AdjacencyGraph(n={self.n}, m={self.m}, {kind})"


def degree(g: AdjacencyGraph, v: int) -> int:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range [0, {g.n})")
    off = g._py()[0]
    return off[v + 1] - off[v]


def iter_lists(g: AdjacencyGraph, meter: Optional[ResourceMeter] = None
               ) -> Iterator[tuple[int, list[int], Optional[list[int]]]]:
    """One full pass in vertex order: yields (v, neighbors, weights-or-None).

    The pass is charged when iteration starts; stopping early still counts.
    """
    if meter is not None:
        meter.charge_pass()
    off, tgt, wts = g._py()
    for v in range(g.n):
        a, b = off[v], off[v + 1]
        yield v, tgt[a:b], (wts[a:b] if wts is not None else None)


def scan(g: AdjacencyGraph, visitor: Callable[[int, int, int], None],
         meter: Optional[ResourceMeter] = None) -> None:
    """Call ``visitor(v, w, weight)`` for every directed adjacency entry."""
    for v, nbrs, wts in iter_lists(g, meter):
        if wts is None:
            for w in nbrs:
                visitor(v, w, 1)
        else:
            for w, wt in zip(nbrs, wts):
                visitor(v, w, wt)


def probe(g: AdjacencyGraph, v: int, i: int, meter: Optional[ResourceMeter] = None
          ) -> tuple[int, int]:
    """Random read of the i-th entry of v's list as (neighbor, weight)."""
    off, tgt, wts = g._py()
    if meter is not None:
        meter.random_reads += 1
    j = off[v] + i
    return tgt[j], (wts[j] if wts is not None else 1)


# --------------------------------------------------------------------------
# construction and validation

def from_edges(n: int, edges, weighted: Optional[bool] = None,
               verify: bool = True) -> AdjacencyGraph:
    """Build a store from (u, v) or (u, v, w) tuples.  Lists are ordered by
    insertion order of the edges, which keeps generators reproducible."""
    edges = list(edges)
    if weighted is None:
        weighted = bool(edges) and len(edges[0]) == 3
    if edges:
        arr = np.asarray([(e[0], e[1]) for e in edges], dtype=np.int64)
        wt = (np.asarray([e[2] for e in edges], dtype=np.int64)
              if weighted else None)
    else:
        arr = np.zeros((0, 2), dtype=np.int64)
        wt = np.zeros(0, dtype=np.int64) if weighted else None
    return from_arrays(n, arr[:, 0], arr[:, 1], wt, verify=verify)


def from_arrays(n: int, us: np.ndarray, vs: np.ndarray,
                ws: Optional[np.ndarray] = None, verify: bool = True
                ) -> AdjacencyGraph:
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    m = len(us)
    if m and (us.min() < 0 or vs.min() < 0 or us.max() >= n or vs.max() >= n):
        raise GraphFormatError("edge endpoint out of range")
    if m and np.any(us == vs):
        raise GraphFormatError("self-loop")
    src = np.concatenate([us, vs])
    dst = np.concatenate([vs, us])
    order = np.argsort(src, kind="stable")
    targets = dst[order]
    counts = np.bincount(src, minlength=n) if m else np.zeros(n, dtype=np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    weights = None
    if ws is not None:
        ws = np.asarray(ws, dtype=np.int64)
        weights = np.concatenate([ws, ws])[order]
    g = AdjacencyGraph(offsets, targets, weights)
    if verify:
        verify_graph(g)
    return g


def verify_graph(g: AdjacencyGraph) -> None:
    """Check no self-loops, no parallel edges, symmetric lists, equal weights."""
    n = g.n
    if g.offsets[0] != 0 or np.any(np.diff(g.offsets) < 0) or g.offsets[-1] != len(g.targets):
        raise GraphFormatError("corrupt offset index")
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(g.offsets))
    dst = g.targets
    if len(dst) and (dst.min() < 0 or dst.max() >= n):
        raise GraphFormatError("neighbor id out of range")
    if np.any(src == dst):
        bad = int(src[np.argmax(src == dst)])
        raise GraphFormatError(f"self-loop at vertex {bad}")
    fwd = src * n + dst
    if len(np.unique(fwd)) != len(fwd):
        raise GraphFormatError("parallel edge")
    rev = dst * n + src
    fo, ro = np.argsort(fwd), np.argsort(rev)
    if not np.array_equal(fwd[fo], rev[ro]):
        raise GraphFormatError("asymmetric adjacency")
    if g.weights is not None and not np.array_equal(g.weights[fo], g.weights[ro]):
        raise GraphFormatError("weight mismatch between the two copies of an edge")


# --------------------------------------------------------------------------
# text format

def load_text(stream, verify: bool = True) -> AdjacencyGraph:
    """Parse ``adj <n> <m> u|w`` followed by one ``<v>: ...`` line per vertex."""
    header = None
    lists: dict[int, tuple[list[int], list[int]]] = {}
    lineno = 0
    for raw in stream:
        lineno += 1
        if isinstance(raw, bytes):
            raw = raw.decode("ascii")
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "adj" or parts[3] not in ("u", "w"):
                raise GraphFormatError(f"line {lineno}: bad header {line!r}")
            try:
                hn, hm = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad header {line!r}") from None
            if hn < 0 or hm < 0:
                raise GraphFormatError(f"line {lineno}: negative sizes")
            header = (hn, hm, parts[3] == "w")
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise GraphFormatError(f"line {lineno}: missing ':'")
        try:
            v = int(head)
        except ValueError:
            raise GraphFormatError(f"line {lineno}: bad vertex id {head!r}") from None
        if v in lists:
            raise GraphFormatError(f"line {lineno}: vertex {v} listed twice")
        nbrs, wts = [], []
        for tok in rest.split():
            if header[2]:
                a, at, b = tok.partition("@")
                if not at:
                    raise GraphFormatError(f"line {lineno}: missing weight in {tok!r}")
                try:
                    w, wt = int(a), int(b)
                except ValueError:
                    raise GraphFormatError(f"line {lineno}: bad entry {tok!r}") from None
                if not INT64_MIN <= wt <= INT64_MAX:
                    raise GraphFormatError(f"line {lineno}: weight out of int64 range")
                wts.append(wt)
            else:
                if "@" in tok:
                    raise GraphFormatError(f"line {lineno}: weight in unweighted file")
                try:
                    w = int(tok)
                except ValueError:
                    raise GraphFormatError(f"line {lineno}: bad entry {tok!r}") from None
            nbrs.append(w)
        lists[v] = (nbrs, wts)
    if header is None:
        raise GraphFormatError("empty input")
    n, m, weighted = header
    if set(lists) != set(range(n)):
        missing = sorted(set(range(n)) - set(lists))[:5]
        extra = sorted(set(lists) - set(range(n)))[:5]
        raise GraphFormatError(
            f"vertex ids not contiguous in [0, {n}): missing {missing}, unexpected {extra}")
    offsets = np.zeros(n + 1, dtype=np.int64)
    tgt, wt = [], []
    for v in range(n):
        nbrs, wts = lists[v]
        offsets[v + 1] = offsets[v] + len(nbrs)
        tgt.extend(nbrs)
        wt.extend(wts)
    if len(tgt) != 2 * m:
        raise GraphFormatError(f"header says m={m} but lists hold {len(tgt)} entries")
    g = AdjacencyGraph(offsets, np.asarray(tgt, dtype=np.int64),
                       np.asarray(wt, dtype=np.int64) if weighted else None)
    if verify:
        verify_graph(g)
    return g


def dump_text(g: AdjacencyGraph, stream, comments: Optional[list[str]] = None) -> None:
    for c in comments or ():
        stream.write(f"# {c}\n")
    stream.write(f"adj {g.n} {g.m} {'w' if g.weighted else 'u'}\n")
    off, tgt, wts = g._py()
    for v in range(g.n):
        a, b = off[v], off[v + 1]
        if wts is None:
            body = " ".join(map(str, tgt[a:b]))
        else:
            body = " ".join(f"{w}@{x}" for w, x in zip(tgt[a:b], wts[a:b]))
        stream.write(f"{v}: {body}\n" if body else f"{v}:\n")


# --------------------------------------------------------------------------
# binary mirror: little-endian int64 words
#   magic (8 bytes) | flags | n | m | offsets[n+1] | targets[2m] | weights[2m]?

def dump_binary(g: AdjacencyGraph, stream: BinaryIO) -> None:
    stream.write(BINARY_MAGIC)
    stream.write(struct.pack("<qqq", 1 if g.weighted else 0, g.n, g.m))
    stream.write(g.offsets.astype("<i8").tobytes())
    stream.write(g.targets.astype("<i8").tobytes())
    if g.weighted:
        stream.write(g.weights.astype("<i8").tobytes())


def load_binary(stream: BinaryIO, verify: bool = True) -> AdjacencyGraph:
    data = stream.read()
    if data[:8] != BINARY_MAGIC:
        raise GraphFormatError("bad binary magic")
    if len(data) < 32 or (len(data) - 8) % 8:
        raise GraphFormatError("truncated binary header")
    flags, n, m = struct.unpack_from("<qqq", data, 8)
    words = np.frombuffer(data, dtype="<i8", offset=32)
    need = (n + 1) + 2 * m + (2 * m if flags & 1 else 0)
    if n < 0 or m < 0 or len(words) != need:
        raise GraphFormatError(f"binary body has {len(words)} words, expected {need}")
    offsets = words[: n + 1].copy()
    targets = words[n + 1: n + 1 + 2 * m].copy()
    weights = words[n + 1 + 2 * m:].copy() if flags & 1 else None
    g = AdjacencyGraph(offsets, targets, weights)
    if verify:
        verify_graph(g)
    return g


# files below this many words are symmetry-checked unless told otherwise
VERIFY_WORD_LIMIT = 10**7


def load_graph(source, fmt: str = "text", verify: Optional[bool] = None) -> AdjacencyGraph:
    """Load from a file path or a readable source; ``fmt`` is text or binary."""
    if isinstance(source, (str, bytes)) and not isinstance(source, bytes):
        with open(source, "rb") as fh:
            return load_graph(fh, fmt, verify)
    if isinstance(source, bytes):
        source = io.BytesIO(source)
    if fmt == "binary":
        g = load_binary(source, verify=False)
    elif fmt == "text":
        g = load_text(source, verify=False)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if verify is None:
        verify = len(g.targets) + g.n < VERIFY_WORD_LIMIT
    if verify:
        verify_graph(g)
    return g


def dump_graph(g: AdjacencyGraph, path_or_stream, fmt: str = "text",
               comments: Optional[list[str]] = None) -> None:
    if isinstance(path_or_stream, str):
        mode = "w" if fmt == "text" else "wb"
        with open(path_or_stream, mode) as fh:
            dump_graph(g, fh, fmt, comments)
        return
    if fmt == "text":
        dump_text(g, path_or_stream, comments)
    elif fmt == "binary":
        dump_binary(g, path_or_stream)
    else:
        raise ValueError(f"unknown format {fmt!r}")
