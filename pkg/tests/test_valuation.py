import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import FINITE_FAIR
from softarc.errors import (
    CapabilityError,
    InputError,
    OrderViolation,
    StructureMismatch,
    UnfairStructure,
)
from softarc.valuation import (
    DEATH,
    INF,
    LIFE,
    BoundedSum,
    CappedPrison,
    DrivingPenalty,
    FinancialLife,
    OrderedMax,
    Weighted,
    combine,
    difference,
    is_absorbing,
    make_structure,
    max_absorbing_leq,
    structure_theorems,
    verify_structure,
)

W = Weighted()


def test_weighted_arithmetic():
    assert W.combine(2, 3) == 5
    assert W.diff(5, 3) == 2
    assert W.diff(INF, INF) == INF
    assert W.diff(INF, 7) == INF
    assert W.combine(INF, 1) == INF


def test_difference_rejects_wrong_order():
    with pytest.raises(OrderViolation):
        W.diff(2, 3)
    with pytest.raises(OrderViolation):
        BoundedSum(5).diff(1, 4)


def test_bounded_sum_saturates():
    s = BoundedSum(5)
    assert s.combine(3, 4) == 5
    assert s.diff(5, 3) == 5
    assert s.diff(4, 3) == 1
    assert s.top == 5 and s.bottom == 0


def test_ordered_max_difference_is_larger_argument():
    s = OrderedMax(3)
    for b in range(3):
        for a in range(b + 1):
            assert s.diff(b, a) == b


def test_driving_penalty():
    s = DrivingPenalty(10)
    assert s.combine((7, 0), (8, 0)) == (12, 0)
    assert s.combine((12, 0), (0, 2)) == (0, 2)
    assert s.combine((0, 6), (0, 6)) == (0, INF)
    # any points-only valuation absorbs into a suspension; the maximal one is kept
    assert s.diff((0, 3), (0, 3)) == (12, 0)
    assert s.diff((0, 5), (0, 2)) == (0, 3)
    assert s.diff((0, INF), (0, INF)) == (0, INF)


def test_capped_prison():
    s = CappedPrison(20)
    assert s.combine(15, 10) == 20
    assert s.combine(LIFE, 5) is LIFE
    assert s.combine(LIFE, LIFE) is DEATH
    assert s.diff(LIFE, LIFE) == 20
    assert s.diff(DEATH, LIFE) is DEATH
    assert s.lt(20, LIFE) and s.lt(LIFE, DEATH)


def test_financial_life_has_no_difference():
    s = FinancialLife(3, 3)
    with pytest.raises(UnfairStructure):
        s.diff((0, 1), (3, 0))
    with pytest.raises(UnfairStructure):
        s.max_absorbing_leq((1, 1))


def test_valuation_wrapper():
    a, b = W(3), W(4)
    assert (a + b).value == 7
    assert (b - a).value == 1
    assert a < b and b >= a
    assert combine(a, b) == W(7)
    assert difference(W(INF), a).value == INF
    assert is_absorbing(W(0)) and is_absorbing(W(INF)) and not is_absorbing(a)
    assert max_absorbing_leq(a).value == 0
    with pytest.raises(StructureMismatch):
        a + BoundedSum(5)(1)
    with pytest.raises(StructureMismatch):
        a < BoundedSum(5)(1)


def test_validate_rejects_outside_carrier():
    with pytest.raises(InputError):
        BoundedSum(5)(6)
    with pytest.raises(InputError):
        W(-1)


def test_make_structure():
    assert make_structure("bounded_sum", k=4) == BoundedSum(4)
    with pytest.raises(InputError):
        make_structure("nonsense")
    with pytest.raises(InputError):
        make_structure("weighted", k=3)


@pytest.mark.parametrize("s", FINITE_FAIR, ids=lambda s: s.describe())
def test_exhaustive_axioms_pass(s):
    rep = verify_structure(s)
    assert rep.ok, rep.failed


@pytest.mark.parametrize("s", FINITE_FAIR, ids=lambda s: s.describe())
def test_structure_theorems_hold(s):
    assert structure_theorems(s) == dict.fromkeys(structure_theorems(s))


def test_financial_life_fails_only_fairness():
    rep = verify_structure(FinancialLife(3, 3))
    assert rep.failed == ["fairness"]
    assert rep.axioms["fairness"].witness == ((0, 1), (3, 0))


def test_sampled_mode_needs_seed():
    with pytest.raises(InputError):
        verify_structure(W, samples=10)
    with pytest.raises(CapabilityError):
        verify_structure(W)
    rep = verify_structure(W, samples=2000, seed=1)
    assert rep.ok
    assert verify_structure(W, samples=50, seed=3).as_dict() == verify_structure(
        W, samples=50, seed=3
    ).as_dict()


def test_monotonicity_classes():
    assert OrderedMax(2).idempotent and OrderedMax(2).strictly_monotonic
    assert OrderedMax(3).idempotent and not OrderedMax(3).strictly_monotonic
    assert not BoundedSum(5).strictly_monotonic and not BoundedSum(5).idempotent
    # saturation at the cap breaks strictness
    assert not CappedPrison(20).strictly_monotonic
    assert W.strictly_monotonic


@pytest.mark.parametrize("s", FINITE_FAIR, ids=lambda s: s.describe())
def test_idempotent_and_strict_exclusive_beyond_two(s):
    if len(s.elements()) > 2:
        assert not (s.idempotent and s.strictly_monotonic)


@pytest.mark.parametrize("s", FINITE_FAIR, ids=lambda s: s.describe())
def test_max_absorbing_leq_is_self_difference(s):
    for a in s.elements():
        m = s.max_absorbing_leq(a)
        assert s.is_absorbing(m) and s.leq(m, a)
        assert m == s.diff(a, a)


@pytest.mark.parametrize("s", FINITE_FAIR, ids=lambda s: s.describe())
def test_parse_format_round_trip(s):
    for a in s.elements():
        assert s.parse(s.format(a)) == a


nat_or_inf = st.one_of(st.integers(0, 10**6), st.just(INF))


@given(nat_or_inf, nat_or_inf, nat_or_inf)
def test_weighted_axioms_property(a, b, c):
    assert W.combine(a, b) == W.combine(b, a)
    assert W.combine(W.combine(a, b), c) == W.combine(a, W.combine(b, c))
    lo, hi = sorted((a, b))
    d = W.diff(hi, lo)
    assert W.combine(d, lo) == hi
    # nothing larger is also a difference
    if d != INF:
        assert W.combine(d + 1, lo) != hi


@given(nat_or_inf, nat_or_inf)
def test_weighted_dichotomy_property(a, b):
    r = W.diff(W.combine(a, b), b)
    assert r == a or (r == INF and W.is_absorbing(r))


def test_weighted_sample_reproducible():
    r1, r2 = random.Random(5), random.Random(5)
    assert [W.sample(r1) for _ in range(20)] == [W.sample(r2) for _ in range(20)]
    assert math.isinf(W.top)
