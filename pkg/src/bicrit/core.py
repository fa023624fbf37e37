"""Instances, schedules, and the two closure operations (truncate, compose).

All times are :class:`fractions.Fraction`, so every comparison made against a
theorem bound downstream is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import DomainError

Number = Union[int, Fraction, str]

MODELS = ("P", "R")


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # floats are taken at their exact binary value
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class Job:
    id: int
    weight: Fraction
    processing: Union[Fraction, tuple[Fraction, ...]]

    def __post_init__(self):
        object.__setattr__(self, "weight", as_fraction(self.weight))
        if isinstance(self.processing, (list, tuple)):
            object.__setattr__(
                self, "processing", tuple(as_fraction(p) for p in self.processing)
            )
            values = self.processing
        else:
            object.__setattr__(self, "processing", as_fraction(self.processing))
            values = (self.processing,)
        if self.weight < 0:
            raise DomainError(f"job {self.id}: negative weight {self.weight}")
        if any(p < 0 for p in values):
            raise DomainError(f"job {self.id}: negative processing time")


@dataclass(frozen=True)
class Instance:
    model: str
    machines: int
    jobs: tuple[Job, ...]

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.model not in MODELS:
            raise DomainError(f"unknown machine model {self.model!r}")
        if self.machines < 1:
            raise DomainError("need at least one machine")
        for k, job in enumerate(self.jobs):
            if job.id != k:
                raise DomainError("job ids must be contiguous from 0")
            multi = isinstance(job.processing, tuple)
            if self.model == "P" and multi:
                raise DomainError(f"job {k}: model P takes a single processing time")
            if self.model == "R":
                if not multi or len(job.processing) != self.machines:
                    raise DomainError(
                        f"job {k}: model R needs one processing time per machine"
                    )

    @classmethod
    def identical(cls, machines: int, processing: Sequence[Number],
                  weights: Sequence[Number] | None = None) -> "Instance":
        if weights is None:
            weights = [1] * len(processing)
        jobs = [Job(j, w, p) for j, (p, w) in enumerate(zip(processing, weights))]
        return cls("P", machines, tuple(jobs))

    @classmethod
    def unrelated(cls, processing: Sequence[Sequence[Number]],
                  weights: Sequence[Number] | None = None) -> "Instance":
        """``processing[j][i]`` is the time of job ``j`` on machine ``i``."""
        if not processing:
            raise DomainError("model R instance needs at least one job to fix m")
        if weights is None:
            weights = [1] * len(processing)
        jobs = [Job(j, w, tuple(p)) for j, (p, w) in enumerate(zip(processing, weights))]
        return cls("R", len(processing[0]), tuple(jobs))

    @property
    def n(self) -> int:
        return len(self.jobs)

    def p(self, job: int, machine: int) -> Fraction:
        proc = self.jobs[job].processing
        return proc[machine] if isinstance(proc, tuple) else proc

    def w(self, job: int) -> Fraction:
        return self.jobs[job].weight

    def job_ids(self) -> tuple[int, ...]:
        return tuple(range(self.n))

    @property
    def unit_weights(self) -> bool:
        return all(job.weight == 1 for job in self.jobs)


class Slot(NamedTuple):
    job: int
    start: Fraction
    end: Fraction


@dataclass(frozen=True)
class Schedule:
    """Per-machine timed job sequences. Idle gaps are allowed."""

    machines: tuple[tuple[Slot, ...], ...]
    _completion: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        rows = tuple(
            tuple(Slot(int(s[0]), as_fraction(s[1]), as_fraction(s[2])) for s in row)
            for row in self.machines
        )
        object.__setattr__(self, "machines", rows)
        completion = {}
        for row in rows:
            for slot in row:
                completion.setdefault(slot.job, slot.end)
        object.__setattr__(self, "_completion", completion)

    @classmethod
    def empty(cls, m: int) -> "Schedule":
        return cls(tuple(() for _ in range(m)))

    @classmethod
    def from_sequences(cls, instance: Instance,
                       sequences: Sequence[Sequence[int]]) -> "Schedule":
        """Pack each machine's job sequence back-to-back from time 0."""
        rows = []
        for i, seq in enumerate(sequences):
            now = Fraction(0)
            row = []
            for j in seq:
                end = now + instance.p(j, i)
                row.append(Slot(j, now, end))
                now = end
            rows.append(tuple(row))
        return cls(tuple(rows))

    @property
    def m(self) -> int:
        return len(self.machines)

    @property
    def completion(self) -> dict[int, Fraction]:
        return dict(self._completion)

    def C(self, job: int) -> Fraction:
        return self._completion[job]

    @property
    def jobs(self) -> frozenset[int]:
        return frozenset(self._completion)

    @property
    def makespan(self) -> Fraction:
        return max(self._completion.values(), default=Fraction(0))

    def weighted_sum(self, instance: Instance) -> Fraction:
        return sum((instance.w(j) * c for j, c in self._completion.items()), Fraction(0))

    def sequences(self) -> list[list[int]]:
        return [[s.job for s in row] for row in self.machines]


class Violation(NamedTuple):
    kind: str
    machine: int | None
    job: int | None
    detail: str


def violations(S: Schedule, I: Instance) -> list[Violation]:
    """Every way in which ``S`` fails to be a valid (partial) schedule for ``I``."""
    out: list[Violation] = []
    if S.m != I.machines:
        out.append(Violation("machine_count", None, None,
                             f"schedule has {S.m} machines, instance {I.machines}"))
    seen: dict[int, int] = {}
    for i, row in enumerate(S.machines):
        prev_end = None
        for slot in row:
            j = slot.job
            if not 0 <= j < I.n:
                out.append(Violation("unknown_job", i, j, "job id not in instance"))
                continue
            if j in seen:
                out.append(Violation("duplicate", i, j,
                                     f"also scheduled on machine {seen[j]}"))
            else:
                seen[j] = i
            if slot.start < 0:
                out.append(Violation("negative_start", i, j, str(slot.start)))
            if i < I.machines and slot.end - slot.start != I.p(j, i):
                out.append(Violation("duration", i, j,
                                     f"interval length {slot.end - slot.start} "
                                     f"!= processing {I.p(j, i)}"))
            if prev_end is not None and slot.start < prev_end:
                out.append(Violation("overlap", i, j,
                                     f"starts at {slot.start} before {prev_end}"))
            prev_end = slot.end if prev_end is None else max(prev_end, slot.end)
    return out


def validate(S: Schedule, I: Instance) -> bool:
    return not violations(S, I)


def truncate(S: Schedule, t) -> Schedule:
    """Keep exactly the jobs completing at or before ``t``, times untouched."""
    t = as_fraction(t)
    if t < 0:
        raise DomainError(f"truncation time must be non-negative, got {t}")
    return Schedule(tuple(tuple(s for s in row if s.end <= t) for row in S.machines))


def compose(S1: Schedule, S2: Schedule) -> Schedule:
    """Append ``S2`` after the makespan of ``S1``, dropping jobs ``S1`` already runs."""
    if S1.m != S2.m:
        raise DomainError("schedules have different machine counts")
    offset = S1.makespan
    done = S1.jobs
    rows = []
    for row1, row2 in zip(S1.machines, S2.machines):
        tail = tuple(Slot(s.job, s.start + offset, s.end + offset)
                     for s in row2 if s.job not in done)
        rows.append(row1 + tail)
    return Schedule(tuple(rows))


def metrics(S: Schedule, I: Instance) -> tuple[Fraction, Fraction]:
    """``(C_max, sum w_j C_j)`` of a schedule covering every job of ``I``."""
    missing = set(range(I.n)) - S.jobs
    if missing:
        raise DomainError(f"schedule is missing jobs {sorted(missing)}")
    return S.makespan, S.weighted_sum(I)


@dataclass(frozen=True)
class BicriteriaPoint:
    makespan_ratio: Fraction
    avg_ratio: Fraction
    breakpoint: Fraction

    def dominated_by(self, alpha, beta) -> bool:
        return self.makespan_ratio <= alpha and self.avg_ratio <= beta


def restrict(I: Instance, jobs: Iterable[int] | None) -> tuple[int, ...]:
    """Sorted job ids of a subset (all jobs when ``jobs`` is None)."""
    if jobs is None:
        return I.job_ids()
    return tuple(sorted(set(jobs)))
