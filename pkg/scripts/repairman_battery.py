"""Composed tours on random Euclidean instances: worst length and latency ratios."""

import argparse

import numpy as np

from bicrit.analysis import beta
from bicrit.repairman import MetricInstance, best_tour_for_rho


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=9)
    ap.add_argument("--rho", type=float, default=1.0)
    args = ap.parse_args()

    worst_len = worst_lat = 0.0
    nontrivial = 0
    for k in range(args.count):
        rng = np.random.default_rng([args.seed, k])
        n = int(rng.integers(5, 9))
        M = MetricInstance.from_points([tuple(p) for p in rng.random((n, 2))])
        r = best_tour_for_rho(M, args.rho)
        worst_len = max(worst_len, float(r.point.makespan_ratio))
        worst_lat = max(worst_lat, float(r.point.avg_ratio))
        nontrivial += r.point.avg_ratio > 1
    print(f"instances={args.count} rho={args.rho} beta={beta(args.rho):.6f}")
    print(f"max length ratio={worst_len:.6f}  max latency ratio={worst_lat:.6f}")
    print(f"instances where the latency-optimal tour was too long: {nontrivial}")


if __name__ == "__main__":
    main()
