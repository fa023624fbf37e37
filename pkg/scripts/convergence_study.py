"""Discretization error of the max-min game as the grid is refined."""

import argparse

from bicrit.analysis import beta, solve_game


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rho", type=float, default=1.0)
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800, 1600])
    args = ap.parse_args()

    target = beta(args.rho) - 1
    print(f"rho={args.rho:.6f} continuous value={target:.8f}")
    print(f"{'N':>6} {'grid value':>12} {'error':>10} {'N*error':>9} {'certified':>11}")
    for N in args.sizes:
        sol = solve_game(args.rho, N)
        err = sol.primal_value - target
        print(f"{N:>6} {sol.primal_value:12.8f} {err:10.2e} {N * err:9.4f} {sol.lower_bound:11.8f}")


if __name__ == "__main__":
    main()
