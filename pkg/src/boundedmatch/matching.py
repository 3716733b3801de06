"""Matching containers and the mechanical validity check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .graph_store import AdjacencyGraph, degree


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class Matching:
    """Vertex-disjoint edges, stored lo-endpoint first and sorted."""

    edges: list[tuple[int, int]] = field(default_factory=list)
    weight: Optional[int] = None

    def __post_init__(self):
        self.edges = sorted(norm_edge(u, v) for u, v in self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def covered(self) -> set[int]:
        return {x for e in self.edges for x in e}

    def is_disjoint(self) -> bool:
        return len(self.covered()) == 2 * len(self.edges)


class InvalidMatching(AssertionError):
    pass


def edge_weight(g: AdjacencyGraph, u: int, v: int) -> Optional[int]:
    """Weight of edge [u, v] by scanning u's list, or None if absent."""
    for w, wt in g.incident(u):
        if w == v:
            return wt
    return None


def validate_matching(g: AdjacencyGraph, m: Matching, k: Optional[int] = None) -> int:
    """Raise unless ``m`` is a matching of g (of size k if given).

    Returns its weight (edge count for unweighted graphs).
    """
    if k is not None and len(m) != k:
        raise InvalidMatching(f"expected {k} edges, got {len(m)}")
    if not m.is_disjoint():
        raise InvalidMatching("edges share an endpoint")
    total = 0
    for u, v in m.edges:
        if not (0 <= u < g.n and 0 <= v < g.n):
            raise InvalidMatching(f"edge ({u}, {v}) out of range")
        # scan the shorter list
        a, b = (u, v) if degree(g, u) <= degree(g, v) else (v, u)
        wt = edge_weight(g, a, b)
        if wt is None:
            raise InvalidMatching(f"edge ({u}, {v}) not in graph")
        total += wt
    if m.weight is not None and g.weighted and m.weight != total:
        raise InvalidMatching(f"stated weight {m.weight} != recomputed {total}")
    return total


def matching_from_pairs(pairs: Iterable[tuple[int, int]], weight: Optional[int] = None
                        ) -> Matching:
    return Matching(list(pairs), weight)
