import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA, grid
from softarc.errors import CapabilityError
from softarc.gac import (
    PropagationQueue,
    QueueEntry,
    enforce_ac_underlying,
    enforce_gac,
    enforce_sac_strict,
    enumerate_closures,
    ext_ac,
    gac_iteration_bound,
    is_gac,
    is_gac_strict,
    proj_ac,
    underlying_csp,
)
from softarc.instance import parse_instance
from softarc.model import OpCounts, Violation, Vcsp, f_min
from softarc.oracle import brute_equivalent, brute_optimum, crisp_ac_reference
from softarc.random_instances import random_vcsp
from softarc.valuation import INF, BoundedSum, CappedPrison, FinancialLife, OrderedMax, Weighted


def test_queue_is_fifo():
    q = PropagationQueue()
    for k in range(3):
        q.push(QueueEntry((k,), (0,), k))
    assert [q.pop().alpha for _ in range(3)] == [0, 1, 2]
    assert len(q) == 0 and q.pushes == 3


def test_proj_ac_matches_proj_and_enqueues(fx):
    v = fx("fig1a")
    q = PropagationQueue()
    assert proj_ac(v, (0, 1), 0, 1, q)
    assert v == fx("fig1b")
    assert list(q) == [QueueEntry((1,), (0,), 1)]


def test_proj_ac_guards(fx):
    v = fx("fig1a")
    q = PropagationQueue()
    assert not proj_ac(v, (0, 1), 0, 0, q)
    assert len(q) == 0
    # an infinite unary cost cannot grow
    v.unary[0][1] = INF
    assert not proj_ac(v, (0, 1), 0, 1, q)
    assert grid(v, (0, 1)) == [INF, 0, INF, 1]


def test_ext_ac_propagates_top(fx):
    v = fx("fig2a")
    q = PropagationQueue()
    assert ext_ac(v, 2, 0, (2, 3), q)
    assert grid(v, (2, 3)) == [INF, INF, 0, INF]
    assert [e.t for e in q] == [(0, 0), (0, 1)]
    assert all(e.alpha == INF for e in q)


def test_ext_ac_leaves_finite_weights():
    s = Weighted()
    v = Vcsp(s, ["x", "y"], [["a", "b"], ["a"]])
    v.set_table((0, 1), [2, 0])
    v.unary[0] = [3, 0]
    assert not ext_ac(v, 0, 0, (0, 1))
    assert grid(v, (0, 1)) == [2, 0]


def test_ext_ac_all_bottom_unary(fx):
    v = fx("fig1a")
    assert not ext_ac(v, 0, 0, (0, 1))
    assert v == fx("fig1a")


def test_enforce_gac_fig1a(fx):
    c = OpCounts()
    w = enforce_gac(fx("fig1a"), c)
    assert w == fx("fig1d")
    assert is_gac(w)
    assert brute_equivalent(fx("fig1a"), w)
    assert c.iterations <= gac_iteration_bound(w)
    # the closure's bound is 0, which is also the optimum of the input
    assert f_min(w) == 0 == brute_optimum(fx("fig1a")).valuation


def test_enforce_gac_already_consistent(fx):
    v = fx("fig5a")
    c = OpCounts()
    assert enforce_gac(v, c) == v
    assert c.iterations == 0


def test_enforce_gac_needs_fairness():
    v = Vcsp(FinancialLife(3, 3), ["x"], [["a"]])
    with pytest.raises(CapabilityError):
        enforce_gac(v)
    with pytest.raises(CapabilityError):
        is_gac(v)


def test_is_gac_witnesses(fx):
    chk = is_gac(fx("fig1a"))
    assert not chk and chk.witness == Violation(2, (0, 1), var=0, value=1)
    assert is_gac(fx("fig5a"))
    assert is_gac(fx("fig1d"))
    chk = is_gac(fx("fig1c"))
    assert chk.witness == Violation(1, (0, 1), t=(0, 0))


def test_is_gac_strict_conditions(fx):
    assert is_gac_strict(fx("fig1d")) and is_gac_strict(fx("fig5a"))
    assert is_gac_strict(fx("fig1c")).witness.condition == "forbidden"
    assert is_gac_strict(fx("fig1a")).witness.condition == "bottom"
    v = fx("fig1a")
    v.constraints[(0, 1)].set((1, 1), INF)
    assert is_gac_strict(v).witness == Violation("support", (0, 1), var=0, value=1)


def test_underlying_csp(fx):
    u = underlying_csp(fx("fig1a"))
    assert u.structure == OrderedMax(2)
    assert grid(u, (0, 1)) == [1, 0, 1, 0]
    u = underlying_csp(fx("fig5a"))
    assert grid(u, (0, 1)) == [0, 0, 0, 0]


def test_enforce_ac_underlying_fig2a(fx):
    v = fx("fig2a")
    w = enforce_ac_underlying(v)
    assert w.unary[2][0] == INF and w.unary[3][1] == INF
    assert crisp_ac_reference(v) == {(2, 0), (3, 1)}
    assert brute_equivalent(v, w)
    assert enforce_ac_underlying(fx("fig5a")) == fx("fig5a")


def test_enforce_ac_underlying_chain_cascade():
    s = Weighted()
    names = [f"x{k}" for k in range(5)]
    v = Vcsp(s, names, [["a", "b"]] * 5)
    for k in range(4):
        # x_k = b forbids x_{k+1} = a and x_k = a is only compatible with x_{k+1} = a
        v.set_table((k, k + 1), [0, INF, INF, 0])
    v.unary[4] = [INF, 0]
    w = enforce_ac_underlying(v)
    removed = {(i, a) for i in range(5) for a in range(2) if w.unary[i][a] == INF}
    assert removed == crisp_ac_reference(v) == {(k, 0) for k in range(5)}


def test_sac_strict_fig2a(fx):
    v = fx("fig2a")
    w = enforce_sac_strict(v)
    assert w.unary[1] == [0, 1]  # the finite weight stays where it was
    assert w.unary[2][0] == INF and w.unary[3][1] == INF
    assert is_gac(w)
    assert underlying_csp(w) == underlying_csp(enforce_ac_underlying(v))
    assert all(c.backend == "delta" for c in w.constraints.values())


def test_sac_strict_matches_gac_on_fig1a(fx):
    assert enforce_sac_strict(fx("fig1a")) == enforce_gac(fx("fig1a"))


def test_sac_strict_capability():
    for s in (BoundedSum(5), CappedPrison(20)):
        with pytest.raises(CapabilityError):
            enforce_sac_strict(Vcsp(s, ["x"], [["a"]]))


def test_guard_is_only_an_optimisation():
    rng = random.Random(11)
    for _ in range(60):
        v = random_vcsp(rng, BoundedSum(5), n_max=4)
        a, b = OpCounts(), OpCounts()
        guarded = enforce_gac(v, a)
        unguarded = enforce_gac(v, b, guard=False)
        assert is_gac(unguarded) and brute_equivalent(v, unguarded)
        assert b.iterations >= a.iterations
        assert is_gac(guarded)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_gac_bounded_sum_property(seed):
    v = random_vcsp(random.Random(seed), BoundedSum(5), p_ternary=0.3)
    w = enforce_gac(v)
    assert is_gac(w)
    assert brute_equivalent(v, w)
    s = v.structure
    assert s.leq(f_min(w), brute_optimum(v).valuation)


def test_random_weighted_example():
    rng = random.Random(3)
    v = random_vcsp(rng, n_max=4, d_max=3)
    while (v.n, v.d) != (4, 3):
        v = random_vcsp(rng, n_max=4, d_max=3)
    w = enforce_gac(v)
    assert is_gac(w) and brute_equivalent(v, w)


def test_closures_of_consistent_input(fx):
    rep = enumerate_closures(fx("fig5a"), 6)
    assert rep.complete and len(rep.closures) == 1
    assert rep.closures[0].problem == fx("fig5a")


def test_closures_fig1a(fx):
    rep = enumerate_closures(fx("fig1a"), 8)
    assert rep.complete
    assert rep.closures and all(is_gac(c.problem) for c in rep.closures)
    # every closure is a valid lower bound on the optimum, which is 0
    assert set(rep.f_mins) == {0}


def test_non_confluence_frozen():
    v = parse_instance("nonconfluent")
    rep = enumerate_closures(v, 6)
    assert rep.complete
    by_fmin = {c.f_min: c.problem for c in rep.closures}
    assert sorted(by_fmin) == [0, 1]
    for k in (0, 1):
        assert by_fmin[k] == parse_instance(DATA / f"nonconfluent_closure_fmin{k}.yaml")
        assert is_gac(by_fmin[k]) and brute_equivalent(v, by_fmin[k])
    assert brute_optimum(v).valuation == 1


def test_closure_budget_exhausted(fx):
    rep = enumerate_closures(fx("fig2a"), 0)
    assert not rep.complete and rep.closures == []
