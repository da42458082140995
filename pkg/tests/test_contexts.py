import pytest
from hypothesis import given, settings, strategies as st

from lawecse._contexts import (MAIN, LeaveOneOutMax, rooted_plan, rooted_system,
                               unrooted_plan, unrooted_system)
from lawecse.matching import NEG_INF
from lawecse.random_trees import random_tree, rng_for
from lawecse.trees import root_at


@settings(max_examples=200, deadline=None)
@given(st.lists(st.one_of(st.floats(-50, 50, allow_nan=False), st.just(NEG_INF)), max_size=10))
def test_leave_one_out_matches_direct(values):
    loo = LeaveOneOutMax(values)
    for i in range(len(values)):
        rest = values[:i] + values[i + 1:]
        assert loo.query(i) == max(rest, default=NEG_INF)
    assert loo.query() == max(values, default=NEG_INF)


def test_leave_one_out_ties():
    loo = LeaveOneOutMax([3.0, 3.0, 1.0])
    assert loo.query(0) == 3.0 and loo.query(1) == 3.0 and loo.query(2) == 3.0


@pytest.mark.parametrize("n, seed", [(1, 0), (2, 0), (5, 1), (12, 2), (30, 3)])
def test_unrooted_plan_fills_every_context_after_its_children(n, seed):
    t = random_tree(n, rng_for("plan", seed), 4)
    sys_, idx = unrooted_system(t)
    assert sys_.n_ctx == 2 * (n - 1) + n
    plan = unrooted_plan(sys_, idx)
    done = set()
    for k in range(len(plan.kind)):
        lo, hi = plan.seg[k], plan.seg[k + 1]
        assert all(c in done for c in plan.nb_ctx[lo:hi])
        done.add(plan.ctx[k])
        if plan.kind[k] == MAIN:
            done |= set(plan.out_ctx[lo:hi])
    assert done == set(range(sys_.n_ctx))


def test_rooted_plan_is_postorder():
    t = random_tree(20, rng_for("plan", 9), 3)
    view = root_at(t, 0)
    sys_ = rooted_system(view)
    plan = rooted_plan(sys_, view)
    assert list(plan.vertex) == list(view.postorder)
