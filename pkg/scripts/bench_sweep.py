"""Workspace and pass sweep over N and k; prints the bench table.

    python scripts/bench_sweep.py --k 2,4,8,16,32 --sizes 1e4,1e5,1e6
"""

import argparse
import json

from boundedmatch.bench import fit_constant, format_table, size_invariant, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k", default="2,4,8,16,32")
    ap.add_argument("--sizes", default="1e4,1e5,1e6")
    ap.add_argument("--pipeline", choices=["ugm", "wgm", "both"], default="both")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json-out", help="also write rows and fitted constants here")
    args = ap.parse_args()

    ks = [int(x) for x in args.k.split(",")]
    sizes = [int(float(x)) for x in args.sizes.split(",")]
    pipes = ["ugm", "wgm"] if args.pipeline == "both" else [args.pipeline]
    rows = sweep(pipes, ks, sizes, seed=args.seed)
    print(format_table(rows))
    if args.json_out:
        summary = {p: {"c": fit_constant(rows, p), "size_invariant": size_invariant(rows, p)}
                   for p in pipes}
        with open(args.json_out, "w") as fh:
            json.dump({"rows": [r.as_dict() for r in rows], "summary": summary}, fh,
                      indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
