"""Command-line entry point.

Exit codes: 0 matching found (or check passed), 1 no k-matching exists,
2 usage or I/O error, 3 randomized hash build failed, 4 verify disagreement.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

from .bench import format_table, sweep
from .config import DEFAULT_EPSILON, RunConfig
from .graph_store import GraphFormatError, ResourceMeter, dump_graph, from_edges, load_graph
from .hash_membership import HashBuildFailure
from .matching import InvalidMatching, Matching, validate_matching
from . import testkit
from .unweighted import find_k_matching
from .weighted import max_weight_k_matching, reduce_graph

EXIT_FOUND, EXIT_NONE, EXIT_USAGE, EXIT_HASH, EXIT_MISMATCH = 0, 1, 2, 3, 4

log = logging.getLogger("boundedmatch")


@dataclass
class RunReport:
    pipeline: str
    k: int
    mode: str
    epsilon: float
    seed: int
    found: bool
    edges: Optional[list] = None
    weight: Optional[int] = None
    branch: str = ""
    peak_workspace_words: int = 0
    full_passes: int = 0
    random_reads: int = 0
    hash_retries: int = 0
    wall_time: float = 0.0

    def to_json(self, stats_only: bool = False) -> str:
        d = asdict(self)
        if stats_only:
            d.pop("edges")
        return json.dumps(d, sort_keys=True)


def _config(args) -> RunConfig:
    return RunConfig(deterministic=args.deterministic, epsilon=args.epsilon,
                     paper_epsilon=args.paper_epsilon, seed=args.seed)


def _effective_epsilon(cfg: RunConfig, k: int, pipeline: str) -> float:
    if cfg.deterministic:
        return 0.0
    return 2.0 ** cfg.epsilon_log2(k, pipeline)


def _load(args):
    verify = False if args.no_verify_input else None
    src = sys.stdin.buffer if args.graph == "-" else args.graph
    return load_graph(src, fmt=args.format, verify=verify)


def _solve(pipeline: str, g, k: int, cfg: RunConfig):
    meter = ResourceMeter()
    t0 = time.perf_counter()
    if pipeline == "ugm":
        res = find_k_matching(g, k, cfg, meter)
    else:
        res = max_weight_k_matching(g, k, cfg, meter)
    dt = time.perf_counter() - t0
    m = res.matching
    weight = None
    if m is not None:
        weight = m.weight if pipeline == "wgm" else len(m)
    report = RunReport(
        pipeline=pipeline, k=k, mode=cfg.mode,
        epsilon=_effective_epsilon(cfg, k, pipeline), seed=cfg.seed,
        found=m is not None, edges=[list(e) for e in m.edges] if m is not None else None,
        weight=weight, branch=res.branch,
        peak_workspace_words=meter.peak_workspace_words, full_passes=meter.full_passes,
        random_reads=meter.random_reads, hash_retries=max(0, res.hash_rounds - 1),
        wall_time=round(dt, 6))
    return res, report


def cmd_solve(args, pipeline: str) -> int:
    g = _load(args)
    cfg = _config(args)
    _, report = _solve(pipeline, g, args.k, cfg)
    print(report.to_json(args.stats_only))
    return EXIT_FOUND if report.found else EXIT_NONE


def cmd_reduce(args) -> int:
    g = _load(args)
    cfg = _config(args)
    if g.weighted and not args.unweighted:
        red, _ = reduce_graph(g, args.k, cfg)
        ix = {v: i for i, v in enumerate(red.names)}
        out = from_edges(len(red.names), [(ix[e.lo], ix[e.hi], e.wt) for e in red.edges],
                         weighted=True)
        kept, names, branch = len(red.edges), red.names, red.branch
    else:
        res = find_k_matching(g, args.k, cfg)
        if res.kernel is not None:
            kern = res.kernel
            ix = {v: i for i, v in enumerate(kern.names)}
            edges = [(ix[u], ix[v]) for u, v in kern.edges()]
            names = kern.names
        else:
            # a k-matching was found directly; the matching itself is an
            # equivalent (and minimal) kernel, and the empty graph when none exists
            pairs = res.matching.edges if res.matching is not None else []
            names = sorted({x for e in pairs for x in e})
            ix = {v: i for i, v in enumerate(names)}
            edges = [(ix[u], ix[v]) for u, v in pairs]
        out = from_edges(len(names), edges, weighted=False)
        kept, branch = len(edges), res.branch
    comments = [f"reduced k={args.k} branch={branch} edges={kept}",
                "names " + " ".join(map(str, names))]
    dump_graph(out, args.out, fmt=args.out_format, comments=comments)
    print(json.dumps({"branch": branch, "edges": kept, "vertices": len(names),
                      "out": args.out}, sort_keys=True))
    return EXIT_FOUND


def _read_solution(path: str) -> Matching:
    with open(path) as fh:
        data = json.load(fh)
    if not data.get("found", True):
        return None
    return Matching([tuple(e) for e in data["edges"]], data.get("weight"))


def cmd_verify(args) -> int:
    g = _load(args)
    pipeline = "wgm" if g.weighted else "ugm"
    if args.pipeline:
        pipeline = args.pipeline
    if args.solution:
        claimed = _read_solution(args.solution)
    else:
        res, _ = _solve(pipeline, g, args.k, _config(args))
        claimed = res.matching
    try:
        if pipeline == "ugm":
            truth = testkit.oracle_k_matching_exists(g, args.k)
            ok = (claimed is not None) == truth
            best = None
        else:
            o = testkit.oracle_max_weight_k_matching(g, args.k)
            truth, best = o.exists, o.best_weight
            ok = (claimed is not None) == truth
        if ok and claimed is not None:
            w = validate_matching(g, claimed, args.k)
            if pipeline == "wgm":
                ok = w == best
    except testkit.InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidMatching as exc:
        ok = False
        print(f"invalid matching: {exc}", file=sys.stderr)
    print(json.dumps({"agree": ok, "oracle_exists": truth, "oracle_weight": best,
                      "pipeline": pipeline, "k": args.k}, sort_keys=True))
    if not ok:
        return EXIT_MISMATCH
    return EXIT_FOUND if truth else EXIT_NONE


def cmd_gen(args) -> int:
    weights = tuple(int(x) for x in args.weights.split(",")) if args.weights else None
    if args.family == "planted-for-size":
        g = testkit.planted_for_size(int(float(args.size)), args.k, seed=args.seed,
                                     weighted=weights is not None)
    else:
        params = dict(n=args.n, p=args.p, m=args.m, count=args.count, degree=args.degree,
                      background=args.background, weights=weights)
        g = testkit.gen_graph(args.family, seed=args.seed,
                              **{k: v for k, v in params.items() if v is not None})
    dump_graph(g, args.out, fmt=args.format,
               comments=[f"family={args.family} seed={args.seed}"])
    print(json.dumps({"n": g.n, "m": g.m, "out": args.out, "size": g.size,
                      "checksum": g.checksum()}, sort_keys=True))
    return EXIT_FOUND


def cmd_bench(args) -> int:
    ks = [int(x) for x in args.k.split(",")]
    sizes = [int(float(x)) for x in args.sizes.split(",")]
    pipes = ["ugm", "wgm"] if args.pipeline == "both" else [args.pipeline]
    cfg = RunConfig(deterministic=args.deterministic, seed=args.seed)
    rows = sweep(pipes, ks, sizes, seed=args.seed, config=cfg)
    if args.json:
        print(json.dumps([r.as_dict() for r in rows], sort_keys=True))
    else:
        print(format_table(rows))
    return EXIT_FOUND


def _run_flags(p: argparse.ArgumentParser, need_k: bool = True) -> None:
    p.add_argument("graph", help="adjacency file, or - for stdin")
    if need_k:
        p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--paper-epsilon", action="store_true",
                   help="use the exponentially small per-pipeline failure bound")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true",
                   help="sorted containers instead of hashing; never fails")
    p.add_argument("--no-verify-input", action="store_true")
    p.add_argument("--format", choices=["text", "binary"], default="text")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boundedmatch", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    for name, helptext in (("ugm", "find a k-matching (unweighted)"),
                           ("wgm", "find a maximum-weight k-matching")):
        p = sub.add_parser(name, help=helptext)
        _run_flags(p)
        p.add_argument("--stats-only", action="store_true")

    p = sub.add_parser("reduce", help="write the reduced kernel as a graph file")
    _run_flags(p)
    p.add_argument("--out", required=True)
    p.add_argument("--out-format", choices=["text", "binary"], default="text")
    p.add_argument("--unweighted", action="store_true",
                   help="use the unweighted kernel even for a weighted input")

    p = sub.add_parser("verify", help="cross-check against the exhaustive oracle")
    _run_flags(p)
    p.add_argument("--solution", help="JSON report to check instead of solving")
    p.add_argument("--pipeline", choices=["ugm", "wgm"])

    p = sub.add_parser("gen", help="generate a graph file")
    p.add_argument("family", choices=["erdos-renyi", "disjoint-edges",
                                      "planted-large-vertices", "planted-for-size"])
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--background", choices=["cycle", "matching", "none"])
    p.add_argument("--weights", help="integer weight range lo,hi (write --weights=-5,5 for negatives)")
    p.add_argument("--size", default="1e4", help="target N for planted-for-size")
    p.add_argument("--k", type=int, default=4, help="k for planted-for-size")
    p.add_argument("--format", choices=["text", "binary"], default="text")

    p = sub.add_parser("bench", help="workspace/pass sweep over N and k")
    p.add_argument("--k", default="2,4,8", help="comma-separated k values")
    p.add_argument("--sizes", default="1e4,1e5,1e6")
    p.add_argument("--pipeline", choices=["ugm", "wgm", "both"], default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--json", action="store_true")
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_FOUND
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    if getattr(args, "k", 1) is not None and isinstance(args.k, int) and args.k < 0:
        print("error: --k must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    handlers = {"ugm": lambda a: cmd_solve(a, "ugm"), "wgm": lambda a: cmd_solve(a, "wgm"),
                "reduce": cmd_reduce, "verify": cmd_verify, "gen": cmd_gen,
                "bench": cmd_bench}
    try:
        return handlers[args.cmd](args)
    except HashBuildFailure as exc:
        print(f"error: {exc}; rerun with another --seed, a smaller --epsilon, "
              "or --deterministic", file=sys.stderr)
        return EXIT_HASH
    except (GraphFormatError, testkit.InfeasibleSpec, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
