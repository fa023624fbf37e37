"""Seeded instance suites and the theorem battery run over them."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .analysis import beta
from .composer import best_for_rho, bound_dominance, two_two
from .core import Instance, Job, as_fraction, metrics
from .errors import DomainError, OracleSizeError
from .io import instance_from_json, instance_to_json, parse_rat, rat, schedule_from_json, schedule_to_json
from .oracles import MAX_JOBS, MAX_MACHINES, optima

BOUND_SLACK = 1e-9
SUITE_HEADER = ("instance", "rho", "t", "alpha", "cmax_ratio", "avg_ratio", "stretch", "pass")


@dataclass(frozen=True)
class SuiteConfig:
    count: int = 500
    seed: int = 1
    model: str = "P"
    n_range: tuple[int, int] = (3, 9)
    m_range: tuple[int, int] = (2, 3)
    p_range: tuple[int, int] = (1, 20)
    w_range: tuple[int, int] = (1, 10)
    rhos: tuple = (math.log(2), 0.8065, 1.0)

    def __post_init__(self):
        for name in ("n_range", "m_range", "p_range", "w_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise DomainError(f"{name} is empty")
        if self.count < 0:
            raise DomainError("count must be non-negative")
        if self.m_range[0] < 1 or self.n_range[0] < 0:
            raise DomainError("need at least one machine and a non-negative job count")
        if self.p_range[0] < 0 or self.w_range[0] < 0:
            raise DomainError("processing times and weights must be non-negative")


def check_caps(cfg: SuiteConfig) -> None:
    if cfg.n_range[1] > MAX_JOBS or cfg.m_range[1] > MAX_MACHINES:
        raise OracleSizeError(
            f"suite ranges exceed oracle caps (n <= {MAX_JOBS}, m <= {MAX_MACHINES})")


def make_instance(cfg: SuiteConfig, index: int) -> Instance:
    """Instance ``index`` of the suite, drawn from a PCG64 stream seeded by ``[seed, index]``."""
    rng = np.random.default_rng([cfg.seed, index])
    n = int(rng.integers(cfg.n_range[0], cfg.n_range[1] + 1))
    m = int(rng.integers(cfg.m_range[0], cfg.m_range[1] + 1))
    lo, hi = cfg.p_range
    w = rng.integers(cfg.w_range[0], cfg.w_range[1] + 1, size=n)
    if cfg.model == "R":
        p = rng.integers(lo, hi + 1, size=(n, m))
        jobs = [Job(j, int(w[j]), tuple(int(x) for x in p[j])) for j in range(n)]
    else:
        p = rng.integers(lo, hi + 1, size=n)
        jobs = [Job(j, int(w[j]), int(p[j])) for j in range(n)]
    return Instance(cfg.model, m, tuple(jobs))


def generate(cfg: SuiteConfig) -> list[Instance]:
    check_caps(cfg)
    return [make_instance(cfg, k) for k in range(cfg.count)]


def _rho_label(rho) -> str:
    return repr(float(rho)) if isinstance(rho, float) else str(rho)


def evaluate(args: tuple[int, Instance, Sequence]) -> dict:
    """Everything the battery checks for one instance, as a JSON-ready record."""
    index, instance, rhos = args
    record: dict = {"index": index, "instance": instance_to_json(instance)}
    try:
        opt = optima(instance)
    except OracleSizeError as e:
        record["skipped"] = str(e)
        return record
    record["opt"] = {
        "makespan": rat(opt.L), "makespan_witness": schedule_to_json(opt.makespan.witness),
        "weighted": rat(opt.sum_wc), "weighted_witness": schedule_to_json(opt.weighted.witness),
    }
    results = []
    for rho in rhos:
        r = best_for_rho(instance, rho, opt=opt)
        b = beta(float(rho))
        ok = (r.point.makespan_ratio <= 1 + as_fraction(rho)
              and float(r.point.avg_ratio) <= b + BOUND_SLACK)
        results.append({
            "rho": _rho_label(rho), "beta": b, "t": rat(r.t), "alpha": rat(r.alpha),
            "cmax_ratio": rat(r.point.makespan_ratio), "avg_ratio": rat(r.point.avg_ratio),
            "stretch": rat(r.per_job_max_stretch), "pass": ok,
            "schedule": schedule_to_json(r.schedule),
        })
    record["best"] = results
    tt = two_two(instance, opt=opt)
    record["two_two"] = {
        "cmax_ratio": rat(tt.point.makespan_ratio), "avg_ratio": rat(tt.point.avg_ratio),
        "stretch": rat(tt.per_job_max_stretch),
        "pass": tt.point.dominated_by(2, 2), "schedule": schedule_to_json(tt.schedule),
    }
    dom = bound_dominance(instance, opt)
    record["bound_dominance"] = {
        "candidates": len(dom),
        "violations": sum(float(achieved) > bound + BOUND_SLACK for _, achieved, bound in dom),
        "max_excess": max(float(achieved) - bound for _, achieved, bound in dom),
    }
    return record


def worker_count() -> int:
    env = os.environ.get("BICRIT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass
class SuiteReport:
    config: SuiteConfig
    records: list[dict] = field(default_factory=list)

    @property
    def skipped(self) -> int:
        return sum("skipped" in r for r in self.records)

    def violations(self) -> dict[str, int]:
        live = [r for r in self.records if "skipped" not in r]
        return {
            "theorem": sum(not b["pass"] for r in live for b in r["best"]),
            "two_two": sum(not r["two_two"]["pass"] for r in live),
            "bound_dominance": sum(r["bound_dominance"]["violations"] for r in live),
        }

    @property
    def ok(self) -> bool:
        return not any(self.violations().values())

    def max_ratios(self) -> dict:
        live = [r for r in self.records if "skipped" not in r]
        out: dict = {}
        for b in (b for r in live for b in r["best"]):
            cur = out.setdefault(b["rho"], {"cmax_ratio": 0.0, "avg_ratio": 0.0, "beta": b["beta"]})
            cur["cmax_ratio"] = max(cur["cmax_ratio"], float(parse_rat(b["cmax_ratio"])))
            cur["avg_ratio"] = max(cur["avg_ratio"], float(parse_rat(b["avg_ratio"])))
        tt = [r["two_two"] for r in live]
        out["two_two"] = {
            "cmax_ratio": max((float(parse_rat(x["cmax_ratio"])) for x in tt), default=0.0),
            "avg_ratio": max((float(parse_rat(x["avg_ratio"])) for x in tt), default=0.0),
        }
        return out

    def csv_rows(self) -> list[tuple]:
        rows = []
        for r in self.records:
            for b in r.get("best", ()):
                rows.append((r["index"], b["rho"], b["t"], b["alpha"], b["cmax_ratio"],
                             b["avg_ratio"], b["stretch"], int(b["pass"])))
        return rows

    def to_json(self) -> dict:
        cfg = asdict(self.config)
        cfg["rhos"] = [_rho_label(r) for r in self.config.rhos]
        return {"config": cfg, "summary": {"instances": len(self.records),
                                           "skipped": self.skipped,
                                           "violations": self.violations(),
                                           "max_ratios": self.max_ratios()},
                "records": self.records}


def run_suite(cfg: SuiteConfig, workers: int | None = None) -> SuiteReport:
    """Run the battery; records come back in instance order whatever the worker count."""
    instances = generate(cfg)
    jobs = [(k, inst, cfg.rhos) for k, inst in enumerate(instances)]
    workers = workers or worker_count()
    if workers <= 1 or len(jobs) < 2:
        records = [evaluate(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return SuiteReport(cfg, records)


def audit(report: dict) -> list[str]:
    """Recompute every ratio in a suite report from its dumped schedules.

    Returns a list of discrepancies (empty when the report is consistent).
    """
    problems = []
    for r in report["records"]:
        if "skipped" in r:
            continue
        inst = instance_from_json(r["instance"])
        k = r["index"]
        L = metrics(schedule_from_json(r["opt"]["makespan_witness"]), inst)[0]
        best = metrics(schedule_from_json(r["opt"]["weighted_witness"]), inst)[1]
        if L != parse_rat(r["opt"]["makespan"]) or best != parse_rat(r["opt"]["weighted"]):
            problems.append(f"instance {k}: oracle witness disagrees with stored value")
            continue
        entries = [(b["rho"], b) for b in r["best"]] + [("two_two", r["two_two"])]
        for label, b in entries:
            cmax, wsum = metrics(schedule_from_json(b["schedule"]), inst)
            cr = cmax / L if L else Fraction(1)
            ar = wsum / best if best else Fraction(1)
            if cr != parse_rat(b["cmax_ratio"]) or ar != parse_rat(b["avg_ratio"]):
                problems.append(f"instance {k} rho {label}: ratios do not reproduce")
    return problems
