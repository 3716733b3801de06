"""Resource sweeps over generated inputs of growing size."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Iterable

from .config import RunConfig
from .graph_store import ResourceMeter
from .testkit import planted_for_size
from .unweighted import find_k_matching
from .weighted import max_weight_k_matching


@dataclass
class BenchRow:
    pipeline: str
    k: int
    size: int
    n: int
    m: int
    branch: str
    peak_workspace_words: int
    full_passes: int
    random_reads: int
    wall_time: float

    @property
    def per_k2(self) -> float:
        return self.peak_workspace_words / (self.k * self.k)

    def as_dict(self) -> dict:
        return asdict(self)


def bench_point(pipeline: str, k: int, size: int, seed: int = 0,
                config: RunConfig | None = None) -> BenchRow:
    config = config or RunConfig(seed=seed)
    g = planted_for_size(size, k, seed=seed, weighted=(pipeline == "wgm"))
    meter = ResourceMeter()
    t0 = time.perf_counter()
    if pipeline == "ugm":
        res = find_k_matching(g, k, config, meter)
    elif pipeline == "wgm":
        res = max_weight_k_matching(g, k, config, meter)
    else:
        raise ValueError(f"unknown pipeline {pipeline!r}")
    dt = time.perf_counter() - t0
    return BenchRow(pipeline, k, size, g.n, g.m, res.branch, meter.peak_workspace_words,
                    meter.full_passes, meter.random_reads, dt)


def sweep(pipelines: Iterable[str], ks: Iterable[int], sizes: Iterable[int],
          seed: int = 0, config: RunConfig | None = None) -> list[BenchRow]:
    return [bench_point(p, k, s, seed, config)
            for p in pipelines for k in ks for s in sizes]


def fit_constant(rows: list[BenchRow], pipeline: str) -> float:
    """Smallest c with peak <= c*k^2 on every row of this pipeline."""
    return max(r.per_k2 for r in rows if r.pipeline == pipeline)


def size_invariant(rows: list[BenchRow], pipeline: str) -> dict[int, bool]:
    """Per k: whether the peak is the same value at every size."""
    peaks: dict[int, set] = {}
    for r in rows:
        if r.pipeline == pipeline:
            peaks.setdefault(r.k, set()).add(r.peak_workspace_words)
    return {k: len(v) == 1 for k, v in sorted(peaks.items())}


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'pipe':4} {'k':>3} {'size':>9} {'branch':12} {'peak':>9} {'peak/k^2':>9} " \
           f"{'passes':>6} {'reads':>7} {'secs':>7}"
    lines = [head]
    for r in rows:
        lines.append(f"{r.pipeline:4} {r.k:>3} {r.size:>9} {r.branch:12} "
                     f"{r.peak_workspace_words:>9} {r.per_k2:>9.1f} {r.full_passes:>6} "
                     f"{r.random_reads:>7} {r.wall_time:>7.3f}")
    for p in sorted({r.pipeline for r in rows}):
        same = size_invariant(rows, p)
        lines.append(f"# {p}: c = {fit_constant(rows, p):.2f}  "
                     f"size-invariant: {all(same.values())}")
    return "\n".join(lines)
