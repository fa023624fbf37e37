import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bicrit.core import Instance, Job, Schedule, Slot

settings.register_profile(
    "default", max_examples=100, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


# --- independent brute-force references ---------------------------------

def brute_makespan(inst: Instance, jobs=None) -> Fraction:
    jobs = list(range(inst.n)) if jobs is None else sorted(jobs)
    best = None
    for assign in itertools.product(range(inst.machines), repeat=len(jobs)):
        loads = [Fraction(0)] * inst.machines
        for j, i in zip(jobs, assign):
            loads[i] += inst.p(j, i)
        span = max(loads)
        best = span if best is None else min(best, span)
    return best if best is not None else Fraction(0)


def brute_weighted(inst: Instance) -> Fraction:
    """Minimum sum w_j C_j over every assignment and every order on every machine."""
    best = None
    for assign in itertools.product(range(inst.machines), repeat=inst.n):
        total = Fraction(0)
        for i in range(inst.machines):
            mine = [j for j in range(inst.n) if assign[j] == i]
            cheapest = None
            for perm in itertools.permutations(mine):
                now, cost = Fraction(0), Fraction(0)
                for j in perm:
                    now += inst.p(j, i)
                    cost += inst.w(j) * now
                cheapest = cost if cheapest is None else min(cheapest, cost)
            total += cheapest
        best = total if best is None else min(best, total)
    return best


def random_instance(rng: random.Random, n_max=6, m_max=3, model="P", p_max=20, w_max=10,
                    unit=False) -> Instance:
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    jobs = []
    for j in range(n):
        w = 1 if unit else rng.randint(0, w_max)
        if model == "R":
            jobs.append(Job(j, w, tuple(rng.randint(0, p_max) for _ in range(m))))
        else:
            jobs.append(Job(j, w, rng.randint(0, p_max)))
    return Instance(model, m, tuple(jobs))


def random_schedule(rng: random.Random, inst: Instance, subset=True) -> Schedule:
    """A random valid schedule: random subset, machines, order and idle gaps."""
    jobs = [j for j in range(inst.n) if not subset or rng.random() < 0.8]
    rng.shuffle(jobs)
    rows = [[] for _ in range(inst.machines)]
    now = [Fraction(0)] * inst.machines
    for j in jobs:
        i = rng.randrange(inst.machines)
        start = now[i] + Fraction(rng.choice([0, 0, 1, 2]), rng.choice([1, 2]))
        end = start + inst.p(j, i)
        rows[i].append(Slot(j, start, end))
        now[i] = end
    return Schedule(tuple(tuple(r) for r in rows))


@st.composite
def instances(draw, model="P", n_max=6, m_max=3, unit=False):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_instance(random.Random(seed), n_max, m_max, model, unit=unit)


@st.composite
def instance_and_schedule(draw, model="P", n_max=6, m_max=3, subset=True):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    inst = random_instance(rng, n_max, m_max, model)
    return inst, random_schedule(rng, inst, subset)


@pytest.fixture
def small():
    """m=2, p={3,3,4}, unit weights."""
    return Instance.identical(2, [3, 3, 4])
