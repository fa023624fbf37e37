"""Command line entry point: ``bicrit <subcommand> ...``.

Exit codes: 0 success, 1 a bound was violated, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import analysis
from .composer import best_for_rho, composed_guarantee, pareto_frontier
from .errors import BicritError
from .io import (csv_text, load_instance, load_metric, rat, read_json,
                 schedule_to_json, write_json)
from .oracles import opt_makespan, opt_weighted_completion, optima
from .repairman import best_tour_for_rho
from .schedulers import AVG_CHOICES, TAIL_CHOICES, get_scheduler
from .suite import SUITE_HEADER, SuiteConfig, audit, run_suite

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def parse_rho(text: str) -> float:
    """A float, or one of the named values ``ln2`` and ``balanced``."""
    named = {"ln2": math.log(2), "balanced": None}
    key = text.strip().lower()
    if key in named:
        return named[key] if named[key] is not None else analysis.balanced_rho()
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid rho {text!r}") from None


def _int_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    try:
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _emit(path: str | None, data) -> None:
    if path:
        write_json(path, data)
    else:
        print(json.dumps(data, indent=1, sort_keys=True))


def _write_text(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_oracle(args) -> int:
    inst = load_instance(args.input)
    mk = opt_makespan(inst)
    wc = opt_weighted_completion(inst)
    _emit(args.out, {
        "makespan": rat(mk.value), "makespan_witness": schedule_to_json(mk.witness),
        "weighted": rat(wc.value), "weighted_witness": schedule_to_json(wc.witness),
        "enumerated": mk.enumerated,
    })
    return EXIT_OK


def cmd_schedule(args) -> int:
    inst = load_instance(args.input)
    opt = optima(inst)
    avg = get_scheduler(args.avg, role="avg")
    tail = get_scheduler(args.tail, role="tail")
    r = best_for_rho(inst, args.rho, avg=avg, tail=tail, opt=opt)
    avg_factor = avg.ratio(inst)
    ok = None
    guarantee = None
    # no guarantee is claimed for an avg scheduler without a known ratio
    if avg_factor is not None:
        guarantee = composed_guarantee(args.rho, avg_factor, tail.ratio(inst))
        ok = (float(r.point.makespan_ratio) <= guarantee[0] + 1e-12
              and float(r.point.avg_ratio) <= guarantee[1] + 1e-9)
    _emit(args.out, {
        "rho": args.rho, "avg": avg.name, "tail": tail.name,
        "opt_makespan": rat(opt.L), "opt_weighted": rat(opt.sum_wc),
        "t": rat(r.t), "alpha": rat(r.alpha),
        "makespan_ratio": rat(r.point.makespan_ratio), "avg_ratio": rat(r.point.avg_ratio),
        "per_job_max_stretch": rat(r.per_job_max_stretch),
        "tail_jobs": sorted(r.tail_jobs),
        "guarantee": guarantee and {"makespan": guarantee[0], "avg": guarantee[1]},
        "within_guarantee": ok,
        "schedule": schedule_to_json(r.schedule),
    })
    return EXIT_VIOLATION if ok is False else EXIT_OK


def cmd_frontier(args) -> int:
    inst = load_instance(args.input)
    rows = [(rat(a), rat(c), rat(v)) for a, c, v in pareto_frontier(inst)]
    _write_text(args.out, csv_text(("alpha", "makespan_ratio", "avg_ratio"), rows))
    return EXIT_OK


def cmd_analyze(args) -> int:
    rho = args.rho
    b = analysis.beta(rho)
    rb = analysis.balanced_rho()
    print(f"rho={rho:.6f}")
    print(f"beta={b:.6f}")
    print(f"makespan_factor={1 + rho:.6f}")
    print(f"rho_for_beta(beta)={analysis.rho_for_beta(b):.6f}")
    print(f"rho_for_beta(2)={analysis.rho_for_beta(2):.6f}")
    print(f"balanced_rho={rb:.6f}")
    print(f"balanced_pair=({1 + rb:.6f}, {analysis.beta(rb):.6f})")
    for row in analysis.corollary_table():
        print(f"pair rho={row['rho']:.6f}: derived ({row['makespan']:.6f}, {row['avg']:.6f})"
              f" quoted ({row['quoted_makespan']}, {row['quoted_avg']})")
    return EXIT_OK


def cmd_game(args) -> int:
    sol = analysis.solve_game(args.rho, args.grid, args.eps)
    _emit(args.out, {
        "rho": sol.rho, "N": sol.N, "primal_value": sol.primal_value,
        "dual_value": sol.dual_value, "gap": sol.gap, "lower_bound": sol.lower_bound,
        "target": sol.target,
        "primal": [[x, m] for x, m in sol.primal.masses],
        "dual": [[a, m] for a, m in sol.dual.masses],
    })
    return EXIT_OK


def cmd_equalizer(args) -> int:
    rows = analysis.equalizer_table(args.rho, args.samples)
    text = csv_text(("alpha", "A", "deviation"), [(repr(a), repr(v), repr(d)) for a, v, d in rows])
    _write_text(args.out, text)
    worst = max(abs(d) for _, _, d in rows)
    return EXIT_OK if worst <= args.tol else EXIT_VIOLATION


def cmd_repairman(args) -> int:
    M = load_metric(args.input)
    r = best_tour_for_rho(M, args.rho)
    b = analysis.beta(args.rho)
    ok = r.point.makespan_ratio <= 1 + args.rho and float(r.point.avg_ratio) <= b + 1e-9
    _emit(args.out, {
        "rho": args.rho, "t": rat(r.t), "tour": list(r.tour.order),
        "tsp_opt": rat(r.tsp_length), "latency_opt": rat(r.opt_latency),
        "length": rat(r.tour.open_length), "latency": rat(r.tour.latency),
        "length_ratio": rat(r.point.makespan_ratio), "latency_ratio": rat(r.point.avg_ratio),
        "beta": b, "pass": ok,
    })
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_suite(args) -> int:
    if args.audit:
        problems = audit(read_json(args.audit))
        for p in problems:
            print(p)
        print(f"audit: {len(problems)} discrepancies")
        return EXIT_OK if not problems else EXIT_VIOLATION
    cfg = SuiteConfig(count=args.count, seed=args.seed, model=args.model,
                      n_range=args.n, m_range=args.m, p_range=args.p, w_range=args.w,
                      rhos=tuple(args.rho or SuiteConfig.rhos))
    report = run_suite(cfg, args.workers)
    if args.csv:
        Path(args.csv).write_text(csv_text(SUITE_HEADER, report.csv_rows()))
    if args.json:
        write_json(args.json, report.to_json())
    v = report.violations()
    print(f"instances={len(report.records)} skipped={report.skipped} "
          + " ".join(f"{k}_violations={n}" for k, n in v.items()))
    for label, m in report.max_ratios().items():
        print(f"max {label}: cmax_ratio={m['cmax_ratio']:.6f} avg_ratio={m['avg_ratio']:.6f}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bicrit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="exact optimal makespan and weighted completion time")
    p.add_argument("--input", required=True, help="instance JSON")
    p.add_argument("--out", help="result JSON (default stdout)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("schedule", help="best breakpoint composition for a given rho")
    p.add_argument("--input", required=True)
    p.add_argument("--rho", type=parse_rho, default=1.0)
    p.add_argument("--avg", choices=sorted(AVG_CHOICES), default="exact")
    p.add_argument("--tail", choices=sorted(TAIL_CHOICES), default="exact")
    p.add_argument("--out")
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("frontier", help="ratios at every breakpoint, CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_frontier)

    p = sub.add_parser("analyze", help="closed-form factors for rho")
    p.add_argument("--rho", type=parse_rho, default=1.0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("game", help="solve the discretized max-min game")
    p.add_argument("--rho", type=parse_rho, default=1.0)
    p.add_argument("--grid", type=int, default=1000)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("equalizer", help="A(alpha, f_opt) across alpha, CSV")
    p.add_argument("--rho", type=parse_rho, default=1.0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--out")
    p.set_defaults(func=cmd_equalizer)

    p = sub.add_parser("repairman", help="TSP length / weighted latency composition")
    p.add_argument("--input", required=True, help="metric JSON (dist or points)")
    p.add_argument("--rho", type=parse_rho, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_repairman)

    p = sub.add_parser("suite", help="seeded theorem battery")
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--model", choices=("P", "R"), default="P")
    p.add_argument("--n", type=_int_range, default=(3, 9), metavar="LO:HI")
    p.add_argument("--m", type=_int_range, default=(2, 3), metavar="LO:HI")
    p.add_argument("--p", type=_int_range, default=(1, 20), metavar="LO:HI")
    p.add_argument("--w", type=_int_range, default=(1, 10), metavar="LO:HI")
    p.add_argument("--rho", type=parse_rho, action="append",
                   help="repeatable; default ln2, 0.8065, 1")
    p.add_argument("--workers", type=int, help="default: BICRIT_THREADS or CPU count")
    p.add_argument("--csv", help="per-row CSV output")
    p.add_argument("--json", help="full JSON report with schedules")
    p.add_argument("--audit", metavar="REPORT", help="recheck a JSON report instead of running")
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BicritError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
