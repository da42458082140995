import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lawecse.matching import (NEG_INF, Side, best_cardinality_two, brute_force_mwm,
                              solve_all_deletions, solve_mwm)

from conftest import data_path
from lawecse.cli import parse_matrix

TIE = parse_matrix(open(data_path("assignment_tie.matrix")).read())


def matching_weight(W, pairs):
    return sum(W[i][j] for i, j in pairs)


def test_tie_instance():
    m = solve_mwm(TIE)
    assert m.weight == pytest.approx(5, abs=1e-9)
    # deterministic choice among the two optimal matchings
    assert m.pairs == ((0, 1), (1, 2))


def test_tie_instance_delete_right():
    fam = solve_all_deletions(TIE, Side.RIGHT, with_pairs=True)
    assert fam.per_deleted[1].weight == pytest.approx(3, abs=1e-9)
    assert fam.per_deleted[1].pairs == ((0, 2),)


def test_tie_instance_delete_left():
    fam = solve_all_deletions(TIE, Side.LEFT, with_pairs=True)
    assert fam.per_deleted[0].weight == pytest.approx(2, abs=1e-9)
    assert fam.per_deleted[0].pairs == ((1, 1),)


def test_all_forbidden_gives_empty_matching():
    m = solve_mwm([[NEG_INF] * 3] * 2)
    assert m.weight == 0 and m.pairs == ()


def test_empty_sides():
    assert solve_mwm([]).weight == 0
    assert solve_mwm(np.zeros((3, 0))).weight == 0
    fam = solve_all_deletions(np.zeros((0, 2)), "right")
    assert [fam.per_deleted[c].weight for c in range(2)] == [0, 0]


def test_negative_edges_never_used():
    m = solve_mwm([[-1, -2], [-3, 4]])
    assert m.pairs == ((1, 1),) and m.weight == 4


def test_random_3x3_integers_against_brute_force():
    rng = random.Random(11)
    for _ in range(300):
        W = [[rng.randint(-3, 9) for _ in range(3)] for _ in range(3)]
        assert solve_mwm(W).weight == brute_force_mwm(W)


def reduced(W, side, c):
    if side == "left":
        return [row for i, row in enumerate(W) if i != c]
    return [[x for j, x in enumerate(row) if j != c] for row in W]


def entries():
    return st.one_of(st.integers(-5, 20).map(float), st.floats(-10, 30, allow_nan=False),
                     st.just(NEG_INF))


matrices = st.integers(0, 5).flatmap(
    lambda s: st.integers(0, 5).flatmap(
        lambda t: st.lists(st.lists(entries(), min_size=t, max_size=t), min_size=s, max_size=s)
    )
)


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_mwm_equals_brute_force(W):
    m = solve_mwm(W)
    assert m.weight >= 0
    assert m.weight == pytest.approx(brute_force_mwm(W), abs=1e-9)
    assert m.weight == pytest.approx(matching_weight(W, m.pairs), abs=1e-9)
    rows = [i for i, _ in m.pairs]
    cols = [j for _, j in m.pairs]
    assert len(set(rows)) == len(rows) and len(set(cols)) == len(cols)
    assert all(W[i][j] >= 0 for i, j in m.pairs)
    if W and W[0]:
        assert len(m.pairs) <= min(len(W), len(W[0]))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_dropping_negative_entries_keeps_weight(W):
    cleaned = [[x if x >= 0 else NEG_INF for x in row] for row in W]
    assert solve_mwm(cleaned).weight == solve_mwm(W).weight


@settings(max_examples=200, deadline=None)
@given(matrices, st.sampled_from(["left", "right"]))
def test_deletions_match_from_scratch(W, side):
    fam = solve_all_deletions(W, side, with_pairs=True)
    n = len(W) if side == "left" else (len(W[0]) if W else 0)
    assert sorted(fam.per_deleted) == list(range(n))
    for c, res in fam.per_deleted.items():
        R = reduced(W, side, c)
        assert res.weight == pytest.approx(solve_mwm(R).weight, abs=1e-9)
        # returned pairs realize the weight and avoid the deleted vertex
        assert all((i if side == "left" else j) != c for i, j in res.pairs)
        assert matching_weight(W, res.pairs) == pytest.approx(res.weight, abs=1e-9)


def test_deletions_random_6x12():
    rng = np.random.default_rng(5)
    for _ in range(100):
        W = rng.uniform(-2, 10, size=(6, 12))
        W[rng.random(W.shape) < 0.2] = NEG_INF
        for side in ("left", "right"):
            fam = solve_all_deletions(W, side)
            for c, res in fam.per_deleted.items():
                assert res.weight == pytest.approx(solve_mwm(reduced(W.tolist(), side, c)).weight,
                                                   abs=1e-9)


def test_best_cardinality_two_examples():
    assert best_cardinality_two([5, 1], [4, 2]) == 7
    assert best_cardinality_two([5], [4]) == NEG_INF
    assert best_cardinality_two([5, NEG_INF], [4, NEG_INF]) == NEG_INF


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 8).flatmap(
    lambda k: st.tuples(st.lists(entries(), min_size=k, max_size=k),
                        st.lists(entries(), min_size=k, max_size=k))))
def test_best_cardinality_two_brute_force(cols):
    a, b = cols
    expect = max((a[i] + b[j] for i, j in itertools.permutations(range(len(a)), 2)),
                 default=NEG_INF)
    assert best_cardinality_two(a, b) == expect
