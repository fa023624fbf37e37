"""Print the breakpoint frontier of one random instance next to the continuous bound."""

import argparse

from bicrit.analysis import A, schedule_to_pdf
from bicrit.composer import pareto_frontier
from bicrit.oracles import optima
from bicrit.suite import SuiteConfig, make_instance


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--index", type=int, default=0)
    args = ap.parse_args()

    inst = make_instance(SuiteConfig(seed=args.seed), args.index)
    opt = optima(inst)
    f = schedule_to_pdf(opt.weighted.witness, opt.L, inst)
    print(f"n={inst.n} m={inst.machines} L={opt.L} sum_wC={opt.sum_wc}")
    print(f"{'alpha':>8} {'cmax':>8} {'avg':>8} {'1+A':>8}")
    for alpha, cmax, avg in pareto_frontier(inst, opt=opt):
        print(f"{float(alpha):8.4f} {float(cmax):8.4f} {float(avg):8.4f} "
              f"{1 + A(float(alpha), f):8.4f}")


if __name__ == "__main__":
    main()
