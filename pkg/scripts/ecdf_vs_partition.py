"""Draw a sample, then report how much true mass lies beyond its maximum.

Averaged over many samples this tail mass is 1/(n+1). The partition CDF
reserves exactly that amount, and the ECDF reserves none.
"""
import argparse

import numpy as np

from partition_stats.distributions import parse_distribution
from partition_stats.estimators import compare_cdfs
from partition_stats.partition import sorted_sample_new


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dist", default="exp:1")
    ap.add_argument("--n", type=int, default=9)
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    dist = parse_distribution(args.dist)
    rng = np.random.default_rng(args.seed)
    beyond = np.empty(args.trials)
    for t in range(args.trials):
        s = sorted_sample_new(dist.sample_rng(rng, args.n))
        beyond[t] = 1.0 - dist.cdf(float(s.values[-1]))
    rep = compare_cdfs(sorted_sample_new(dist.sample(args.seed, args.n)))
    se = beyond.std(ddof=1) / np.sqrt(args.trials)
    print(f"true mass above max: {beyond.mean():.5f} +/- {se:.5f}")
    print(f"partition reserves:  {rep.tail_mass_above_max['partition']:.5f}")
    print(f"ECDF reserves:       {rep.tail_mass_above_max['ecdf']:.5f}")


if __name__ == "__main__":
    main()
