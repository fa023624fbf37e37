"""Exact optimal makespan and weighted completion time by enumeration.

Every machine assignment is examined (``m**n`` of them, in lexicographic
order of the assignment vector, job 0 most significant). Order on a machine
does not matter for makespan, and for the weighted sum each machine is
sequenced by Smith's rule, which is optimal for a fixed assignment. The
lexicographically smallest optimal assignment is returned, so results are
deterministic.

Arithmetic is done on integers after scaling by common denominators, then
converted back to :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .core import Instance, Schedule, restrict
from .errors import OracleSizeError

MAX_JOBS = 10
MAX_MACHINES = 4


@dataclass(frozen=True)
class OracleResult:
    value: Fraction
    witness: Schedule
    enumerated: int


def smith_key(instance: Instance, machine: int):
    """Sort key realizing Smith's rule (non-increasing w/p, ties by id)."""
    def key(j: int):
        p = instance.p(j, machine)
        if p == 0:
            return (0, Fraction(0), j)
        return (1, -instance.w(j) / p, j)
    return key


def smith_order(instance: Instance, jobs: Iterable[int], machine: int = 0) -> list[int]:
    return sorted(jobs, key=smith_key(instance, machine))


def _check_budget(n: int, m: int) -> None:
    if n > MAX_JOBS or m > MAX_MACHINES:
        raise OracleSizeError(
            f"exact oracle limited to n <= {MAX_JOBS}, m <= {MAX_MACHINES}; "
            f"got n={n}, m={m}"
        )


def _lcm_denominator(values) -> int:
    return math.lcm(1, *(Fraction(v).denominator for v in values))


class _Scaled:
    """Integer view of the processing times and weights of a job subset."""

    def __init__(self, instance: Instance, jobs: tuple[int, ...]):
        m = instance.machines
        self.instance = instance
        self.jobs = jobs
        p = [[instance.p(j, i) for i in range(m)] for j in jobs]
        w = [instance.w(j) for j in jobs]
        self.p_den = _lcm_denominator(x for row in p for x in row)
        self.w_den = _lcm_denominator(w)
        p_int = [[int(x * self.p_den) for x in row] for row in p]
        w_int = [int(x * self.w_den) for x in w]
        bound = (len(jobs) + 1) * (max(w_int, default=0) + 1) * (
            sum(max(row) for row in p_int) + 1) * (len(jobs) + 1)
        dtype = np.int64 if bound < 2**62 else object
        self.p = np.array(p_int, dtype=dtype).reshape(len(jobs), m)
        self.w = np.array(w_int, dtype=dtype)
        self.dtype = dtype


def _assignments(n: int, m: int) -> np.ndarray:
    idx = np.arange(m**n, dtype=np.int64)
    cols = [(idx // m ** (n - 1 - k)) % m for k in range(n)]
    if not cols:
        return np.zeros((1, 0), dtype=np.int8)
    return np.stack(cols, axis=1).astype(np.int8)


def _mask_costs(sc: _Scaled, machine: int) -> np.ndarray:
    """Smith-sequenced weighted completion sum of every job subset on a machine.

    Bit ``k`` of a mask stands for ``sc.jobs[k]``.
    """
    n = len(sc.jobs)
    cost = np.zeros(1 << n, dtype=sc.dtype)
    load = np.zeros(1 << n, dtype=sc.dtype)
    key = smith_key(sc.instance, machine)
    order = sorted(range(n), key=lambda k: key(sc.jobs[k]))
    masks = np.zeros(1, dtype=np.int64)
    for k in order:
        new = masks | (1 << k)
        p = sc.p[k, machine]
        load[new] = load[masks] + p
        cost[new] = cost[masks] + sc.w[k] * load[new]
        masks = np.concatenate([masks, new])
    return cost


def _witness(instance: Instance, jobs: tuple[int, ...], assign) -> Schedule:
    seqs = [[] for _ in range(instance.machines)]
    for j, i in zip(jobs, assign):
        seqs[int(i)].append(j)
    seqs = [smith_order(instance, seq, i) for i, seq in enumerate(seqs)]
    return Schedule.from_sequences(instance, seqs)


@lru_cache(maxsize=8192)
def _opt_makespan(instance: Instance, jobs: tuple[int, ...]) -> OracleResult:
    n, m = len(jobs), instance.machines
    _check_budget(n, m)
    sc = _Scaled(instance, jobs)
    A = _assignments(n, m)
    loads = np.stack([(A == i).astype(sc.dtype) @ sc.p[:, i] if n else
                      np.zeros(1, dtype=sc.dtype) for i in range(m)], axis=1)
    span = loads.max(axis=1)
    best = int(np.argmin(span))
    value = Fraction(int(span[best]), sc.p_den)
    return OracleResult(value, _witness(instance, jobs, A[best]), len(A))


@lru_cache(maxsize=8192)
def _opt_weighted(instance: Instance, jobs: tuple[int, ...]) -> OracleResult:
    n, m = len(jobs), instance.machines
    _check_budget(n, m)
    sc = _Scaled(instance, jobs)
    A = _assignments(n, m)
    bits = (np.int64(1) << np.arange(n, dtype=np.int64))
    total = np.zeros(len(A), dtype=sc.dtype)
    for i in range(m):
        masks = ((A == i) * bits).sum(axis=1) if n else np.zeros(1, dtype=np.int64)
        total = total + _mask_costs(sc, i)[masks]
    best = int(np.argmin(total))
    value = Fraction(int(total[best]), sc.p_den * sc.w_den)
    return OracleResult(value, _witness(instance, jobs, A[best]), len(A))


def opt_makespan(instance: Instance, jobs: Iterable[int] | None = None) -> OracleResult:
    """Minimum makespan over all assignments of ``jobs`` (default: all jobs)."""
    return _opt_makespan(instance, restrict(instance, jobs))


def opt_weighted_completion(instance: Instance,
                            jobs: Iterable[int] | None = None) -> OracleResult:
    """Minimum sum of w_j C_j over all assignments, each machine in Smith order."""
    return _opt_weighted(instance, restrict(instance, jobs))


@dataclass(frozen=True)
class Optima:
    makespan: OracleResult
    weighted: OracleResult

    @property
    def L(self) -> Fraction:
        return self.makespan.value

    @property
    def sum_wc(self) -> Fraction:
        return self.weighted.value


def optima(instance: Instance) -> Optima:
    return Optima(opt_makespan(instance), opt_weighted_completion(instance))
