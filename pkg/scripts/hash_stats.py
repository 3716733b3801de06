"""Monte Carlo over the universal family: single-round injectivity rate and
build-failure rate for a given epsilon."""

import argparse
import math
import random

from boundedmatch.hash_membership import (HashBuildFailure, UniversalHash, build_injective,
                                          is_injective)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=int, default=64)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--builds", type=int, default=200)
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    wins = sum(is_injective(UniversalHash.sample(args.h ** 2, rng),
                            rng.sample(range(10**9), args.h)) for _ in range(args.trials))
    sigma = math.sqrt(0.25 / args.trials)
    print(f"single round: {wins}/{args.trials} = {wins / args.trials:.3f} "
          f"(floor 0.5-3sigma = {0.5 - 3 * sigma:.3f})")
    fails = 0
    for _ in range(args.builds):
        try:
            build_injective(rng.sample(range(10**9), args.h), epsilon=args.epsilon, rng=rng)
        except HashBuildFailure:
            fails += 1
    print(f"builds at eps={args.epsilon}: {fails}/{args.builds} failed")


if __name__ == "__main__":
    main()
