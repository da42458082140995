import math

import pytest
from hypothesis import given, settings, strategies as st

from lawecse.weights import (NEG_INF, POS_INF, WeightError, WeightScheme, edge_weight,
                             parse_weights, serialize_weights, vertex_weight)

from conftest import load_weights


def test_branch_scheme():
    s = parse_weights("vdefault 1\npenalty 0.2\nvpair yellow white -5\nvpair red white 2")
    assert s.penalty == 0.2
    assert vertex_weight(s, "white", "white") == 1
    assert vertex_weight(s, "red", "white") == 2
    assert vertex_weight(s, "yellow", "white") == -5
    assert s == load_weights("branch")


def test_edge_pair_lookup():
    s = load_weights("edge_bonus")
    assert edge_weight(s, "black", "red") == -1
    assert edge_weight(s, "black", "black") == 3
    assert edge_weight(s, "red", "red") == 0


def test_infinite_penalty_is_mcs_mode():
    s = parse_weights("penalty inf")
    assert s.penalty == POS_INF and s.mcs_mode


def test_forbidden_pair():
    s = parse_weights("vdefault 1\nvpair A B -inf")
    assert s.vertex_weight("A", "B") == NEG_INF
    assert s.vertex_weight("B", "A") == 1


def test_defaults():
    s = parse_weights("")
    assert s.vertex_weight("x", "y") == NEG_INF
    assert s.edge_weight("x", "y") == 0
    assert s.penalty == 0


def test_pairs_are_ordered():
    s = parse_weights("vpair A B 2")
    assert s.vertex_weight("A", "B") == 2
    assert s.vertex_weight("B", "A") == NEG_INF


@pytest.mark.parametrize("text, line", [
    ("penalty -1", 1),
    ("vpair A B inf", 1),
    ("\nvdefault inf", 2),
    ("vpair A B", 1),
    ("bogus 1", 1),
    ("vpair A B nan", 1),
    ("penalty x", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(WeightError) as exc:
        parse_weights(text)
    assert exc.value.lineno == line


def test_scheme_rejects_bad_values():
    with pytest.raises(WeightError):
        WeightScheme(penalty=-0.5)
    with pytest.raises(WeightError):
        WeightScheme(vertex_pairs={("a", "b"): math.inf})


weights = st.one_of(st.floats(-1e6, 1e6, allow_nan=False), st.just(NEG_INF))
labels = st.sampled_from(["A", "B", "C", "-", "x1"])


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(st.tuples(labels, labels), weights, max_size=8),
       st.dictionaries(st.tuples(labels, labels), weights, max_size=4),
       weights, weights,
       st.one_of(st.floats(0, 1e3, allow_nan=False), st.just(POS_INF)))
def test_serialize_round_trip(vp, ep, vd, ed, p):
    s = WeightScheme(vp, vd, ep, ed, p)
    back = parse_weights(serialize_weights(s))
    for a in ["A", "B", "C", "-", "x1", "zz"]:
        for b in ["A", "B", "C", "-", "x1", "zz"]:
            assert back.vertex_weight(a, b) == s.vertex_weight(a, b)
            assert back.edge_weight(a, b) == s.edge_weight(a, b)
    assert back.penalty == s.penalty
