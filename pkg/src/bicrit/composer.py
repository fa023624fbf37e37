"""Breakpoint composition: truncate an average-completion schedule, append a makespan schedule.

Given a schedule ``S_avg`` that is good for weighted completion time and a
breakpoint ``t``, keep every job with ``C_j <= t`` where it is and reschedule
the remaining jobs ``J'`` with a makespan scheduler after the prefix. With
``t = alpha * L`` and an exact tail, the result has makespan at most
``(1 + alpha) L`` and no job finishing later than ``t + L``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import A, beta, schedule_to_pdf
from .core import (BicriteriaPoint, Instance, Schedule, as_fraction, compose,
                   metrics, truncate, violations)
from .errors import DegenerateError, DomainError
from .oracles import Optima, optima
from .schedulers import SchedulerSpec, get_scheduler


@dataclass(frozen=True)
class CompositionReport:
    t: Fraction
    alpha: Fraction
    schedule: Schedule
    point: BicriteriaPoint
    per_job_max_stretch: Fraction
    tail_jobs: frozenset[int]


def _ratio(value: Fraction, best: Fraction) -> Fraction:
    if best == 0:
        if value == 0:
            return Fraction(1)
        raise DegenerateError("optimum is zero but the schedule is not")
    return value / best


def bicriteria_point(S: Schedule, instance: Instance, opt: Optima,
                     t: Fraction = Fraction(0)) -> BicriteriaPoint:
    cmax, wsum = metrics(S, instance)
    return BicriteriaPoint(_ratio(cmax, opt.L), _ratio(wsum, opt.sum_wc), Fraction(t))


def per_job_stretch(composed: CompositionReport | Schedule, reference: Schedule) -> Fraction:
    """Largest ``C_j(composed) / C_j(reference)`` over jobs with ``C_j(reference) > 0``."""
    S = composed.schedule if isinstance(composed, CompositionReport) else composed
    stretches = [S.C(j) / c for j, c in reference.completion.items() if c > 0]
    return max(stretches, default=Fraction(1))


def generalized_minsum(S: Schedule, instance: Instance, k: int = 1) -> Fraction:
    """``sum w_j C_j**k``."""
    if k < 1:
        raise DomainError("exponent must be a positive integer")
    return sum((instance.w(j) * c**k for j, c in S.completion.items()), Fraction(0))


def _check_complete(instance: Instance, S: Schedule) -> None:
    bad = violations(S, instance)
    if bad:
        raise DomainError(f"invalid schedule: {bad[0].kind} ({bad[0].detail})")
    if S.jobs != frozenset(range(instance.n)):
        raise DomainError("schedule must cover every job of the instance")


def breakpoint_compose(instance: Instance, s_avg: Schedule, t,
                       tail: str | SchedulerSpec = "exact",
                       opt: Optima | None = None) -> CompositionReport:
    t = as_fraction(t)
    if t < 0:
        raise DomainError("breakpoint must be non-negative")
    _check_complete(instance, s_avg)
    opt = opt or optima(instance)
    prefix = truncate(s_avg, t)
    tail_jobs = s_avg.jobs - prefix.jobs
    appended = get_scheduler(tail, role="tail")(instance, tail_jobs)
    S = compose(prefix, appended)
    alpha = t / opt.L if opt.L else Fraction(0)
    return CompositionReport(t, alpha, S, bicriteria_point(S, instance, opt, t),
                             per_job_stretch(S, s_avg), frozenset(tail_jobs))


def _tail_scale(instance: Instance, tail) -> Fraction:
    r = get_scheduler(tail, role="tail").ratio(instance)
    if r is None:
        raise DomainError("tail scheduler needs a claimed makespan ratio")
    return as_fraction(r)


def candidate_breakpoints(s_avg: Schedule, limit: Fraction) -> list[Fraction]:
    """``{0} U {C_j <= limit} U {limit}``: the prefix set only changes at completion times."""
    ts = {Fraction(0), limit}
    ts.update(c for c in s_avg.completion.values() if c <= limit)
    return sorted(ts)


def sweep(instance: Instance, s_avg: Schedule, rho, tail: str | SchedulerSpec = "exact",
          opt: Optima | None = None) -> list[CompositionReport]:
    """Compose at every candidate breakpoint up to ``rho * L'``.

    ``L'`` is the optimal makespan scaled by the tail's claimed ratio (1 for
    the exact tail), so every tail finishes within ``L'`` of the prefix.
    """
    rho = as_fraction(rho)
    if rho < 0:
        raise DomainError("rho must be non-negative")
    opt = opt or optima(instance)
    limit = rho * opt.L * _tail_scale(instance, tail)
    return [breakpoint_compose(instance, s_avg, t, tail, opt)
            for t in candidate_breakpoints(s_avg, limit)]


def best_for_rho(instance: Instance, rho, avg: str | SchedulerSpec = "exact",
                 tail: str | SchedulerSpec = "exact", s_avg: Schedule | None = None,
                 opt: Optima | None = None) -> CompositionReport:
    """Best sweep report among those with makespan ratio at most ``delta (1 + rho)``.

    ``delta`` is the tail's claimed makespan ratio. Ties go to the smaller
    makespan ratio, then to the earlier breakpoint.
    """
    rho = as_fraction(rho)
    opt = opt or optima(instance)
    if s_avg is None:
        s_avg = get_scheduler(avg, role="avg")(instance)
    cap = _tail_scale(instance, tail) * (1 + rho)
    reports = [r for r in sweep(instance, s_avg, rho, tail, opt)
               if r.point.makespan_ratio <= cap]
    if not reports:
        raise DomainError("no breakpoint meets the makespan cap; tail ratio claim is wrong")
    return min(reports, key=lambda r: (r.point.avg_ratio, r.point.makespan_ratio, r.t))


def two_two(instance: Instance, s_avg: Schedule | None = None,
            opt: Optima | None = None) -> CompositionReport:
    """Truncate the avg-optimal schedule at ``C*_max`` and append an optimal makespan schedule."""
    opt = opt or optima(instance)
    if s_avg is None:
        s_avg = opt.weighted.witness
    return breakpoint_compose(instance, s_avg, opt.L, "exact", opt)


def pareto_frontier(instance: Instance, s_avg: Schedule | None = None,
                    opt: Optima | None = None,
                    tail: str | SchedulerSpec = "exact") -> list[tuple[Fraction, Fraction, Fraction]]:
    """``(alpha, makespan_ratio, avg_ratio)`` rows over every useful breakpoint.

    Breakpoints are 0, ``L``, and each completion time of ``s_avg``; repeated
    consecutive points are collapsed onto the first.
    """
    opt = opt or optima(instance)
    if s_avg is None:
        s_avg = opt.weighted.witness
    ts = set(candidate_breakpoints(s_avg, s_avg.makespan))
    if opt.L:
        ts.add(opt.L)
    rows: list[tuple[Fraction, Fraction, Fraction]] = []
    for t in sorted(ts):
        r = breakpoint_compose(instance, s_avg, t, tail, opt)
        row = (r.alpha, r.point.makespan_ratio, r.point.avg_ratio)
        if rows and rows[-1][1:] == row[1:]:
            continue
        rows.append(row)
    return rows


def bound_dominance(instance: Instance, opt: Optima | None = None,
                    s_avg: Schedule | None = None) -> list[tuple[Fraction, Fraction, float]]:
    """``(alpha, achieved avg ratio, 1 + A(alpha, pdf of s_avg))`` per candidate breakpoint.

    Covers every breakpoint up to the makespan of ``s_avg`` with an exact tail.
    """
    opt = opt or optima(instance)
    if s_avg is None:
        s_avg = opt.weighted.witness
    f = schedule_to_pdf(s_avg, opt.L, instance)
    rows = []
    for t in candidate_breakpoints(s_avg, max(s_avg.makespan, opt.L)):
        r = breakpoint_compose(instance, s_avg, t, "exact", opt)
        rows.append((r.alpha, r.point.avg_ratio, 1.0 + A(float(r.alpha), f)))
    return rows


def composed_guarantee(rho: float, avg_factor: float = 1.0,
                       makespan_factor: float = 1.0) -> tuple[float, float]:
    """Guarantee when the prefix is an ``avg_factor``-approximation and the tail a
    ``makespan_factor``-approximation: ``(makespan_factor (1 + rho), avg_factor beta(rho))``."""
    return float(makespan_factor) * (1 + float(rho)), float(avg_factor) * beta(float(rho))

