"""Trace the weighted phases on one random graph against the exhaustive oracle.

Each phase adds one edge to the matching; the weight after phase i should be
the best weight of any i-matching.
"""

import argparse

from boundedmatch.blossom import KernelGraph, max_weight_k_matching_kernel
from boundedmatch.testkit import erdos_renyi, oracle_max_weight_by_size
from boundedmatch.weighted import reduce_graph


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--p", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=3)
    args = ap.parse_args()

    g = erdos_renyi(args.n, args.p, seed=args.seed, weights=(-20, 40))
    red, bs = reduce_graph(g, args.k)
    print(f"n={g.n} m={g.m}  reduced: {len(red.edges)} edges, branch {red.branch}, "
          f"|B|={len(bs.members)}")
    kg = KernelGraph(g.n, [(u, v, w) for u, v, w in g.edges()])
    _, hist = max_weight_k_matching_kernel(kg, args.k, check=True)
    best = oracle_max_weight_by_size(g, args.k)
    print(f"{'i':>2} {'phase weight':>12} {'oracle':>8}")
    for i, w in enumerate(hist, 1):
        print(f"{i:>2} {w:>12} {best[i]:>8}{'' if w == best[i] else '  MISMATCH'}")
    if len(hist) < args.k:
        print(f"no {len(hist) + 1}-matching exists")


if __name__ == "__main__":
    main()
