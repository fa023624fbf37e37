"""Polynomial-time schedulers used as prefixes and tails of a composition."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Instance, Schedule, restrict
from .errors import DomainError, UnsupportedModelError
from .oracles import opt_makespan, opt_weighted_completion, smith_order

KK_RATIO = (math.sqrt(2) + 1) / 2


def _require_model(instance: Instance, model: str, who: str) -> None:
    if instance.model != model:
        raise UnsupportedModelError(f"{who} needs model {model}, got {instance.model}")


def list_schedule(instance: Instance, order: Sequence[int]) -> Schedule:
    """Greedy list scheduling on identical machines.

    Each job in ``order`` goes to the machine that frees up first, lowest
    index on ties.
    """
    _require_model(instance, "P", "list scheduling")
    free = [(Fraction(0), i) for i in range(instance.machines)]
    seqs: list[list[int]] = [[] for _ in range(instance.machines)]
    for j in order:
        now, i = heapq.heappop(free)
        seqs[i].append(j)
        heapq.heappush(free, (now + instance.p(j, i), i))
    return Schedule.from_sequences(instance, seqs)


def spt(instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
    """Shortest processing time first; weights are ignored."""
    jobs = restrict(instance, jobs)
    return list_schedule(instance, sorted(jobs, key=lambda j: (instance.p(j, 0), j)))


def wspt_kk(instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
    """Smith's order list-scheduled on identical machines (Kawaguchi-Kyan)."""
    _require_model(instance, "P", "WSPT")
    return list_schedule(instance, smith_order(instance, restrict(instance, jobs)))


def lpt(instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
    jobs = restrict(instance, jobs)
    return list_schedule(instance, sorted(jobs, key=lambda j: (-instance.p(j, 0), j)))


def horn_unrelated(instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
    """Optimal sum of completion times on unrelated machines.

    A job placed k-th from the end of machine i contributes k * p_ij to the
    objective, so the problem is a min-cost matching of jobs to
    (machine, position-from-end) slots.
    """
    _require_model(instance, "R", "Horn's algorithm")
    jobs = restrict(instance, jobs)
    if any(instance.w(j) != 1 for j in jobs):
        raise UnsupportedModelError("Horn's algorithm is limited to unit weights")
    n, m = len(jobs), instance.machines
    if n == 0:
        return Schedule.empty(m)
    den = math.lcm(1, *(instance.p(j, i).denominator for j in jobs for i in range(m)))
    # column i*n + (k-1) is slot (machine i, k-th from the end)
    cost = np.empty((n, m * n), dtype=np.int64)
    for r, j in enumerate(jobs):
        for i in range(m):
            p = int(instance.p(j, i) * den)
            cost[r, i * n:(i + 1) * n] = p * np.arange(1, n + 1)
    rows, cols = linear_sum_assignment(cost)
    placed: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for r, c in zip(rows, cols):
        i, k = divmod(int(c), n)
        placed[i].append((k, jobs[r]))
    seqs = [[j for _, j in sorted(slots, reverse=True)] for slots in placed]
    return Schedule.from_sequences(instance, seqs)


def exact_makespan(instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
    return opt_makespan(instance, jobs).witness


def exact_avg(instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
    return opt_weighted_completion(instance, jobs).witness


@dataclass(frozen=True)
class SchedulerSpec:
    name: str
    run: Callable[..., Schedule]
    claimed_ratio: Callable[[Instance], Fraction | float | None]

    def __call__(self, instance: Instance, jobs: Iterable[int] | None = None) -> Schedule:
        return self.run(instance, jobs)

    def ratio(self, instance: Instance):
        r = self.claimed_ratio(instance)
        if r is not None and r < 1:
            raise DomainError(f"{self.name}: claimed ratio below 1")
        return r


def _one(_):
    return Fraction(1)


SCHEDULERS = {
    "SPT": SchedulerSpec(
        "SPT", spt, lambda I: Fraction(1) if I.unit_weights else None),
    "WSPT_KK": SchedulerSpec("WSPT_KK", wspt_kk, lambda I: KK_RATIO),
    "HORN": SchedulerSpec("HORN", horn_unrelated, _one),
    # Graham's bound for LPT
    "LPT": SchedulerSpec(
        "LPT", lpt, lambda I: Fraction(4, 3) - Fraction(1, 3 * I.machines)),
    "LIST": SchedulerSpec(
        "LIST", lambda I, jobs=None: list_schedule(I, restrict(I, jobs)),
        lambda I: 2 - Fraction(1, I.machines)),
    "EXACT_MAKESPAN": SchedulerSpec("EXACT_MAKESPAN", exact_makespan, _one),
    "EXACT_AVG": SchedulerSpec("EXACT_AVG", exact_avg, _one),
}

AVG_CHOICES = {"exact": "EXACT_AVG", "spt": "SPT", "wspt": "WSPT_KK", "horn": "HORN"}
TAIL_CHOICES = {"exact": "EXACT_MAKESPAN", "lpt": "LPT"}


def get_scheduler(name: str | SchedulerSpec, role: str = "avg") -> SchedulerSpec:
    """Resolve a CLI short name (``exact``, ``spt``, ``lpt``...) or a registry name.

    ``exact`` means the weighted-completion oracle for ``role="avg"`` and the
    makespan oracle for ``role="tail"``.
    """
    if isinstance(name, SchedulerSpec):
        return name
    choices = TAIL_CHOICES if role == "tail" else AVG_CHOICES
    key = choices.get(name, name)
    try:
        return SCHEDULERS[key]
    except KeyError:
        raise DomainError(f"unknown scheduler {name!r}") from None
