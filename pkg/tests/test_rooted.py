import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lawecse.matching import NEG_INF
from lawecse.oracle import is_valid_embedding, oracle_best, weight_of_embedding
from lawecse.random_trees import label_match_scheme, random_scheme, random_tree, rng_for
from lawecse.rooted import RTR, SK, compute_tables, lawecse_rooted, root_to_root, traceback
from lawecse.trees import parse_tree, root_at
from lawecse.weights import WeightScheme

from conftest import load_tree, random_instance


def test_edge_bonus_green(edge_bonus):
    T, T2, W = edge_bonus
    table = compute_tables(root_at(T, "u1"), root_at(T2, "v1"), W)
    assert table.value("u1", "v1", RTR) == pytest.approx(5, abs=1e-9)
    emb = lawecse_rooted(root_at(T, "u1"), root_at(T2, "v1"), W)
    assert emb.weight == pytest.approx(5, abs=1e-9)
    assert set(emb.pairs) == {("u1", "v1"), ("u2", "v2")}


def test_edge_bonus_blocked_middle_vertex(edge_bonus):
    T, _, W = edge_bonus
    T2 = load_tree("edge_bonus_T2_blocked")
    emb = root_to_root(root_at(T, "u1"), root_at(T2, "v1"), W)
    assert emb.weight == pytest.approx(1.7, abs=1e-9)
    assert set(emb.pairs) == {("u1", "v1"), ("u2", "v3")}
    assert emb.skipped == ((2, "v2"),)


def test_branch_rooted(branch):
    T, T2, W = branch
    emb = lawecse_rooted(root_at(T, "r"), root_at(T2, "v"), W)
    assert emb.weight == pytest.approx(2.8, abs=1e-9)
    assert set(emb.pairs) == {("r", "v"), ("u0", "v0")}
    assert emb.skipped == ((1, "u"),)
    assert root_to_root(root_at(T, "r"), root_at(T2, "v"), W).weight == pytest.approx(2.8)


def test_branch_rooted_at_u0_v0(branch):
    T, T2, W = branch
    emb = lawecse_rooted(root_at(T, "u0"), root_at(T2, "v0"), W)
    assert emb.weight == pytest.approx(3.6, abs=1e-9)
    # the four leaves around v0 are interchangeable
    assert emb.mapping.keys() == {"u0", "u3"}
    assert emb.mapping["u0"] == "v0" and emb.mapping["u3"] in {"v", "v1", "x1", "x2"}
    assert sorted(emb.skipped) == [(1, "u"), (1, "u2")]


def test_single_vertex_pair():
    t = parse_tree("v a X")
    emb = lawecse_rooted(root_at(t, "a"), root_at(t, "a"), WeightScheme({("X", "X"): 1.0}))
    assert emb.weight == 1 and emb.pairs == (("a", "a"),)


def test_leaf_pairs_have_no_skip_entry(branch):
    T, T2, W = branch
    table = compute_tables(root_at(T, "r"), root_at(T2, "v"), W)
    assert table.value("u3", "v1", SK) == NEG_INF
    assert table.value("u3", "v1", RTR) == 2


def test_forbidden_roots_are_infeasible():
    t = parse_tree("v a X\nv b Y\ne a b")
    s = WeightScheme({("Y", "Y"): 1.0})
    emb = root_to_root(root_at(t, "a"), root_at(t, "a"), s)
    assert not emb.feasible and emb.weight == NEG_INF


def test_traceback_rejects_infinite_entry(edge_bonus):
    T, _, W = edge_bonus
    T2 = load_tree("edge_bonus_T2_blocked")
    table = compute_tables(root_at(T, "u1"), root_at(T2, "v1"), W)
    with pytest.raises(ValueError):
        traceback(table, ("u1", "v2"))


def test_mcs_mode_has_no_skip_entries():
    for i in range(20):
        T, T2, _, _ = random_instance("mcs-sk", i)
        table = compute_tables(root_at(T, 0), root_at(T2, 0), label_match_scheme())
        assert np.all(table.array(SK) == NEG_INF)


def test_rtr_at_least_vertex_weight():
    for i in range(30):
        T, T2, W, _ = random_instance("rtr-floor", i)
        table = compute_tables(root_at(T, 0), root_at(T2, 0), W)
        rtr = table.array(RTR)
        for u in range(len(T)):
            for v in range(len(T2)):
                w = W.vertex_weight(T.labels[u], T2.labels[v])
                if w != NEG_INF:
                    assert rtr[u, v] >= w


@pytest.mark.parametrize("i", range(60))
def test_rooted_modes_match_oracle(i):
    T, T2, W, rng = random_instance("rooted-oracle", i, max_n=6)
    r, s = rng.choice(T.ids), rng.choice(T2.ids)
    for mode, solver in (("rooted", lawecse_rooted), ("root_to_root", root_to_root)):
        expect, _ = oracle_best(T, T2, W, mode, (r, s))
        emb = solver(root_at(T, r), root_at(T2, s), W)
        assert emb.weight == pytest.approx(expect, abs=1e-9)
        if emb.feasible:
            assert is_valid_embedding(T, T2, emb, (r, s))
            assert weight_of_embedding(T, T2, emb, W, (r, s)) == pytest.approx(emb.weight, abs=1e-9)
            if mode == "root_to_root":
                assert emb.pairs[0] == (r, s)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.floats(0, 2), st.floats(0, 2))
def test_weight_not_increasing_in_penalty(seed, p1, p2):
    T, T2, W, _ = random_instance("mono", seed, max_n=8)
    lo, hi = sorted((p1, p2))
    w_lo = lawecse_rooted(root_at(T, 0), root_at(T2, 0), replace(W, penalty=lo)).weight
    w_hi = lawecse_rooted(root_at(T, 0), root_at(T2, 0), replace(W, penalty=hi)).weight
    w_inf = lawecse_rooted(root_at(T, 0), root_at(T2, 0), replace(W, penalty=math.inf)).weight
    assert w_hi <= w_lo + 1e-9
    assert w_inf <= w_hi + 1e-9


@pytest.mark.parametrize("i", range(25))
def test_label_equality_counts_mapped_vertices(i):
    T, T2, _, rng = random_instance("count", i, max_n=6)
    r, s = rng.choice(T.ids), rng.choice(T2.ids)
    scheme = label_match_scheme(penalty=0.0)
    emb = lawecse_rooted(root_at(T, r), root_at(T2, s), scheme)
    expect, best = oracle_best(T, T2, scheme, "rooted", (r, s))
    assert emb.weight == expect
    if emb.feasible:
        assert emb.weight == len(emb.pairs)


def test_traceback_weight_on_larger_trees():
    for i in range(40):
        rng = rng_for("trace", i)
        T = random_tree(rng.randint(5, 30), rng, 4, prefix="a")
        T2 = random_tree(rng.randint(5, 30), rng, 4, prefix="b")
        W = random_scheme(rng, penalty=rng.choice([0.0, 0.3, math.inf]))
        emb = lawecse_rooted(root_at(T, 0), root_at(T2, 0), W)
        if emb.feasible:
            roots = (T.ids[0], T2.ids[0])
            assert is_valid_embedding(T, T2, emb, roots)
            assert weight_of_embedding(T, T2, emb, W, roots) == pytest.approx(emb.weight, abs=1e-9)
