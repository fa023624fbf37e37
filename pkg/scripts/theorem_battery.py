"""Run the seeded theorem battery and write CSV/JSON reports into an output directory."""

import argparse
import math
from pathlib import Path

from bicrit.io import csv_text, write_json
from bicrit.suite import SUITE_HEADER, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--model", choices=("P", "R"), default="P")
    ap.add_argument("--out", type=Path, default=Path("results/battery"))
    args = ap.parse_args()

    cfg = SuiteConfig(count=args.count, seed=args.seed, model=args.model,
                      rhos=(math.log(2), 0.8065, 1.0))
    report = run_suite(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "suite.csv").write_text(csv_text(SUITE_HEADER, report.csv_rows()))
    write_json(args.out / "suite.json", report.to_json())
    print("violations:", report.violations())
    for label, m in report.max_ratios().items():
        print(f"{label:>20}  cmax {m['cmax_ratio']:.4f}  avg {m['avg_ratio']:.4f}")


if __name__ == "__main__":
    main()
