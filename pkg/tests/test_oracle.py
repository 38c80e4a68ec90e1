import random

import pytest

from softarc.errors import CapabilityError, InputError, SizeError
from softarc.model import Vcsp, equivalent, f_min, valuation_of
from softarc.oracle import (
    absorbing_count,
    brute_equivalent,
    brute_fairness,
    brute_optimum,
    brute_value,
    crisp_ac_reference,
)
from softarc.random_instances import apply_ops, random_ops, random_vcsp
from softarc.valuation import (
    BoundedSum,
    CappedPrison,
    DrivingPenalty,
    FinancialLife,
    OrderedMax,
    Weighted,
)


def test_optimum_fig1a(fx):
    r = brute_optimum(fx("fig1a"))
    assert r.valuation == 0 and r.assignment == {0: 0, 1: 1} and r.count == 4


def test_optimum_fig5a(fx):
    r = brute_optimum(fx("fig5a"))
    assert r.valuation == 1 and r.assignment == {0: 0, 1: 1}


def test_optimum_empty_problem():
    v = Vcsp(Weighted(), ["x", "y"], [["a", "b"], ["c"]])
    r = brute_optimum(v)
    assert r.valuation == 0 and r.assignment == {0: 0, 1: 0}


def test_optimum_cap():
    v = Vcsp(Weighted(), list("xyz"), [["a", "b"]] * 3)
    with pytest.raises(SizeError):
        brute_optimum(v, cap=7)


def test_brute_value_complete_only(fx):
    with pytest.raises(InputError):
        brute_value(fx("fig1a"), {0: 0})


def test_optimum_is_minimal_and_bounds_fmin():
    rng = random.Random(2)
    for _ in range(100):
        v = random_vcsp(rng, p_ternary=0.3)
        r = brute_optimum(v)
        assert valuation_of(v, r.assignment) == r.valuation
        assert f_min(v) <= r.valuation


def test_equivalence_implementations_agree():
    rng = random.Random(1000)
    agree = 0
    for k in range(1000):
        v = random_vcsp(rng, n_max=4)
        w = apply_ops(v, random_ops(rng, v, rng.randint(0, 6)))
        if k % 2:
            # perturb one unary cost to produce non-equivalent pairs too
            i = rng.randrange(w.n)
            w.unary[i][0] = w.structure.combine(w.unary[i][0], rng.choice([0, 1]))
        assert brute_equivalent(v, w) == equivalent(v, w)
        agree += 1
    assert agree == 1000


def test_brute_equivalent_signature():
    a = Vcsp(Weighted(), ["x"], [["a"]])
    b = Vcsp(Weighted(), ["y"], [["a"]])
    with pytest.raises(InputError):
        brute_equivalent(a, b)


def test_fairness_bounded_sum():
    rep = brute_fairness(BoundedSum(5))
    assert rep.fair and rep.pairs == 21 and rep.mismatches == []


def test_fairness_financial_life():
    rep = brute_fairness(FinancialLife(3, 3))
    assert not rep.fair
    assert rep.witness == ((0, 1), (3, 0))


def test_fairness_ordered_max():
    s = OrderedMax(3)
    rep = brute_fairness(s)
    assert rep.fair and rep.mismatches == []
    assert all(s.diff(b, a) == max(a, b) for b in range(3) for a in range(b + 1))


@pytest.mark.parametrize("s", [DrivingPenalty(10), CappedPrison(20), OrderedMax(5)],
                         ids=lambda s: s.kind)
def test_fairness_matches_difference(s):
    rep = brute_fairness(s)
    assert rep.fair and rep.mismatches == []


def test_fairness_needs_finite_carrier():
    with pytest.raises(CapabilityError):
        brute_fairness(Weighted())
    with pytest.raises(CapabilityError):
        absorbing_count(Weighted())


def test_absorbing_counts():
    assert absorbing_count(BoundedSum(5)) == (2, [0, 5])
    assert absorbing_count(DrivingPenalty(10)) == (3, [(0, 0), (12, 0), (0, float("inf"))])
    for k in range(2, 6):
        assert absorbing_count(OrderedMax(k))[0] == k


def test_crisp_reference_on_fig2a(fx):
    assert crisp_ac_reference(fx("fig2a")) == {(2, 0), (3, 1)}
    assert crisp_ac_reference(fx("fig5a")) == set()
