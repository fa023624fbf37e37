import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicrit.core import (Instance, Job, Schedule, Slot, compose, metrics, truncate,
                         validate, violations)
from bicrit.errors import DomainError
from bicrit.schedulers import spt

from conftest import instance_and_schedule, random_schedule


def sched(*rows):
    return Schedule(tuple(tuple(Slot(*s) for s in row) for row in rows))


def test_single_interval_is_valid():
    inst = Instance.identical(1, [5])
    assert validate(sched([(0, 0, 5)]), inst)


def test_overlap_is_invalid():
    inst = Instance.identical(1, [3, 3])
    S = sched([(0, 0, 3), (1, 2, 5)])
    assert not validate(S, inst)
    assert [v.kind for v in violations(S, inst)] == ["overlap"]


def test_duplicate_is_invalid():
    inst = Instance.identical(2, [3])
    S = sched([(0, 0, 3)], [(0, 0, 3)])
    assert not validate(S, inst)
    assert "duplicate" in {v.kind for v in violations(S, inst)}


def test_wrong_duration_and_machine_count():
    inst = Instance.identical(2, [3])
    assert {v.kind for v in violations(sched([(0, 0, 4)], []), inst)} == {"duration"}
    assert {v.kind for v in violations(sched([(0, 0, 3)]), inst)} == {"machine_count"}


def test_negative_start_and_unknown_job():
    inst = Instance.identical(1, [3])
    kinds = {v.kind for v in violations(sched([(0, -1, 2), (7, 2, 3)]), inst)}
    assert kinds == {"negative_start", "unknown_job"}


def test_instance_invariants():
    with pytest.raises(DomainError):
        Job(0, -1, 3)
    with pytest.raises(DomainError):
        Job(0, 1, -3)
    with pytest.raises(DomainError):
        Instance("P", 0, ())
    with pytest.raises(DomainError):
        Instance("P", 1, (Job(1, 1, 1),))
    with pytest.raises(DomainError):
        Instance("R", 2, (Job(0, 1, (1, 2, 3)),))
    with pytest.raises(DomainError):
        Instance("Q", 1, ())


def test_truncate_examples():
    inst = Instance.identical(3, [2, 5, 7])
    S = sched([(0, 0, 2)], [(1, 0, 5)], [(2, 0, 7)])
    T = truncate(S, 5)
    assert T.completion == {0: 2, 1: 5}
    assert truncate(S, 0).jobs == frozenset()
    assert truncate(S, 100) == S
    assert validate(T, inst)
    with pytest.raises(DomainError):
        truncate(S, -1)


def test_compose_examples():
    S1 = sched([(0, 0, 5)], [])
    S2 = sched([(1, 0, 3)], [])
    assert compose(S1, S2).makespan == 8
    # S2's jobs are a subset of S1's
    assert compose(S1, sched([], [(0, 0, 5)])) == S1
    # prefix C = {3, 3}, then a job of length 4 completes at 7
    inst = Instance.identical(2, [3, 3, 4])
    prefix = sched([(0, 0, 3)], [(1, 0, 3)])
    out = compose(prefix, sched([(2, 0, 4)], []))
    assert out.C(2) == 7
    assert validate(out, inst)


def test_metrics_examples(small):
    one = Instance.identical(1, [1, 2])
    assert metrics(spt(one), one) == (3, 4)
    assert metrics(spt(small), small) == (7, 13)
    empty = Instance.identical(2, [])
    assert metrics(Schedule.empty(2), empty) == (0, 0)
    with pytest.raises(DomainError):
        metrics(Schedule.empty(2), small)


@given(instance_and_schedule(), st.fractions(min_value=0, max_value=60))
def test_truncation_closure(pair, t):
    inst, S = pair
    T = truncate(S, t)
    assert validate(T, inst)
    assert T.jobs == {j for j, c in S.completion.items() if c <= t}
    assert all(T.C(j) == S.C(j) for j in T.jobs)


@given(instance_and_schedule(), st.integers(0, 2**32 - 1))
def test_composition_closure_and_identity(pair, seed):
    inst, S1 = pair
    S2 = random_schedule(random.Random(seed), inst)
    out = compose(S1, S2)
    assert validate(out, inst)
    assert out.jobs == S1.jobs | S2.jobs
    for j in out.jobs:
        expected = S1.C(j) if j in S1.jobs else S1.makespan + S2.C(j)
        assert out.C(j) == expected


@given(instance_and_schedule())
def test_identities(pair):
    inst, S = pair
    assert truncate(S, S.makespan) == S
    assert compose(Schedule.empty(inst.machines), S) == S
