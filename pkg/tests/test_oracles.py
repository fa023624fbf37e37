import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given

from bicrit.core import Instance, metrics, validate
from bicrit.errors import OracleSizeError
from bicrit.oracles import opt_makespan, opt_weighted_completion, smith_order

from conftest import brute_makespan, brute_weighted, instances


def test_makespan_examples(small):
    assert opt_makespan(small).value == 6
    assert opt_makespan(small).enumerated == 8
    one = Instance.identical(1, [4, 2, 9])
    assert opt_makespan(one).value == 15
    assert opt_makespan(Instance.identical(3, [7])).value == 7


def test_weighted_examples(small):
    # (p, w) = (2, 1), (1, 2): job 1 first gives 2*1 + 1*3 = 5
    inst = Instance.identical(1, [2, 1], [1, 2])
    r = opt_weighted_completion(inst)
    assert r.value == 5
    assert r.witness.sequences() == [[1, 0]]
    assert opt_weighted_completion(small).value == 13
    assert opt_weighted_completion(Instance.unrelated([[1, 10], [10, 1]])).value == 2


def test_zero_processing_job_goes_first():
    inst = Instance.identical(1, [3, 0], [1, 1])
    r = opt_weighted_completion(inst)
    assert r.witness.sequences() == [[1, 0]]
    assert r.witness.C(1) == 0


def test_size_caps():
    with pytest.raises(OracleSizeError):
        opt_makespan(Instance.identical(2, [1] * 11))
    with pytest.raises(OracleSizeError):
        opt_weighted_completion(Instance.identical(5, [1, 2]))


def test_lexicographic_tie_break(small):
    # assignments (0,0,1) and (0,1,0) both reach 13; the smaller vector wins
    assert opt_weighted_completion(small).witness.sequences() == [[0, 1], [2]]


def test_smith_order():
    inst = Instance.identical(1, [1, 2], [2, 1])
    assert smith_order(inst, [1, 0]) == [0, 1]
    inst = Instance.identical(1, [2, 4, 1], [1, 2, 3])
    assert smith_order(inst, [1, 0, 2]) == [2, 0, 1]
    assert smith_order(inst, [1]) == [1]


def test_rational_inputs():
    inst = Instance.identical(2, [Fraction(1, 2), Fraction(1, 3), Fraction(5, 6)],
                              [Fraction(3, 2), 1, Fraction(1, 7)])
    assert opt_makespan(inst).value == brute_makespan(inst)
    assert opt_weighted_completion(inst).value == brute_weighted(inst)


@given(instances(n_max=6, m_max=3))
def test_matches_full_enumeration_P(inst):
    mk = opt_makespan(inst)
    wc = opt_weighted_completion(inst)
    assert mk.value == brute_makespan(inst)
    assert wc.value == brute_weighted(inst)
    assert validate(mk.witness, inst) and validate(wc.witness, inst)
    assert metrics(mk.witness, inst)[0] == mk.value
    assert metrics(wc.witness, inst)[1] == wc.value


@given(instances(model="R", n_max=5, m_max=3))
def test_matches_full_enumeration_R(inst):
    assert opt_makespan(inst).value == brute_makespan(inst)
    assert opt_weighted_completion(inst).value == brute_weighted(inst)


@given(instances(n_max=7, m_max=3))
def test_subset_monotonicity(inst):
    rng = random.Random(inst.n * 31 + inst.machines)
    sub = [j for j in range(inst.n) if rng.random() < 0.5]
    assert opt_makespan(inst, sub).value <= opt_makespan(inst).value


def test_adjacent_exchange():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(2, 7)
        inst = Instance.identical(1, [rng.randint(0, 9) for _ in range(n)],
                                  [rng.randint(0, 9) for _ in range(n)])
        seq = list(range(n))
        rng.shuffle(seq)

        def cost(order):
            now = total = Fraction(0)
            for j in order:
                now += inst.p(j, 0)
                total += inst.w(j) * now
            return total

        for k in range(n - 1):
            a, b = seq[k], seq[k + 1]
            # b should precede a under Smith's rule
            if smith_order(inst, [a, b]) == [b, a]:
                swapped = seq[:k] + [b, a] + seq[k + 2:]
                assert cost(swapped) <= cost(seq)


def test_smith_sequencing_is_optimal_single_machine():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 6)
        inst = Instance.identical(1, [rng.randint(0, 9) for _ in range(n)],
                                  [rng.randint(0, 9) for _ in range(n)])
        best = min(
            sum(inst.w(j) * sum(inst.p(i, 0) for i in perm[:k + 1]) for k, j in enumerate(perm))
            for perm in permutations(range(n)))
        assert opt_weighted_completion(inst).value == best
