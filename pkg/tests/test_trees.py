import pytest
from hypothesis import given, settings, strategies as st

from lawecse.random_trees import random_tree, rng_for
from lawecse.trees import (LabeledTree, TreeError, directed_contexts, parse_tree, root_at,
                           serialize_tree, tree_from_edges)

from conftest import load_tree


def test_parse_smallest_tree():
    t = parse_tree("v a A\nv b B\ne a b -")
    assert len(t) == 2
    assert t.labels == ("A", "B")
    assert t.edge_label(0, 1) == "-"


def test_red_edge_path():
    t = load_tree("edge_bonus_T2")
    assert [t.degree(i) for i in range(3)] == [1, 2, 1]
    assert t.edge_label(t.index["v2"], t.index["v3"]) == "red"
    assert t.edge_label(t.index["v2"], t.index["v1"]) == "black"


def test_edge_label_defaults_to_dash():
    t = parse_tree("v a\nv b\ne a b")
    assert t.edge_label(0, 1) == "-"
    assert t.labels[0] == "-"


@pytest.mark.parametrize("text, line, fragment", [
    ("v a A\nv b B", 2, "disconnected"),
    ("v a A\nv a B", 2, "duplicate"),
    ("v a A\ne a z", 2, "unknown endpoint"),
    ("v a A\ne a a", 2, "self-loop"),
    ("v a\nv b\nv c\ne a b\ne b c\ne c a", 6, "cycle"),
    ("v a A\nx a", 2, "malformed"),
    ("# nothing\n", 1, "empty"),
])
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(TreeError) as exc:
        parse_tree(text)
    assert exc.value.lineno == line
    assert fragment in str(exc.value)


def test_comments_and_blank_lines_ignored():
    t = parse_tree("# header\n\nv a A\n  # indented comment\nv b B\ne a b x\n")
    assert len(t) == 2 and t.edge_label(0, 1) == "x"


def test_root_at_path():
    t = parse_tree("v a\nv b\nv c\ne a b\ne b c")
    r = root_at(t, "a")
    assert r.children_of("a") == ["b"]
    assert r.children_of("b") == ["c"]
    assert r.parent_of("a") == "a"


def test_root_at_star_leaf():
    t = parse_tree("v x\nv y\nv z\ne x y\ne x z")
    r = root_at(t, "y")
    assert r.children_of("y") == ["x"]
    assert r.children_of("x") == ["z"]


def test_branch_tree_rooted_at_u0():
    r = root_at(load_tree("branch_T"), "u0")
    assert r.children_of("u0") == ["u"]
    assert sorted(r.children_of("u")) == ["r", "u2"]
    assert r.children_of("u2") == ["u3"]


def test_root_at_unknown_id():
    with pytest.raises((KeyError, ValueError)):
        root_at(parse_tree("v a"), "zz")


@pytest.mark.parametrize("text, count", [
    ("v a", 1),
    ("v a\nv b\ne a b", 4),
    ("v a\nv b\nv c\ne a b\ne b c", 7),
])
def test_directed_context_counts(text, count):
    ctxs = directed_contexts(parse_tree(text))
    assert len(ctxs) == count
    assert len(set((c.vertex, c.parent) for c in ctxs)) == count


def test_single_edge_contexts():
    ctxs = {(c.vertex, c.parent) for c in directed_contexts(parse_tree("v a\nv b\ne a b"))}
    assert ctxs == {("a", "b"), ("b", "a"), ("a", None), ("b", None)}


def test_empty_tree_rejected():
    with pytest.raises(TreeError):
        LabeledTree([], [])


trees = st.builds(
    lambda n, seed, cap: random_tree(n, rng_for("trees", seed), cap),
    st.integers(1, 25), st.integers(0, 10**6), st.sampled_from([None, 2, 3, 5]),
)


@settings(max_examples=60, deadline=None)
@given(trees, st.data())
def test_rooting_covers_all_vertices(t, data):
    root = data.draw(st.integers(0, len(t) - 1))
    r = root_at(t, root)
    seen = {r.root}
    for v in range(len(t)):
        for c in r.children[v]:
            assert r.parent[c] == v
            seen.add(c)
    assert seen == set(range(len(t)))
    assert sorted(r.preorder) == list(range(len(t)))


@settings(max_examples=60, deadline=None)
@given(trees)
def test_serialize_round_trip(t):
    back = parse_tree(serialize_tree(t))
    assert back.ids == t.ids
    assert tuple(back.labels) == tuple(t.labels)
    assert sorted(back.edges) == sorted(t.edges)
    assert back == t


@settings(max_examples=40, deadline=None)
@given(trees, st.data())
def test_subtree_below_v_independent_of_outside_root(t, data):
    if len(t) < 2:
        return
    v = data.draw(st.integers(0, len(t) - 1))
    w = data.draw(st.sampled_from(t.adjacency[v]))
    # every root on w's side sees the same subtree below v
    side = {w}
    stack = [w]
    while stack:
        x = stack.pop()
        for y in t.adjacency[x]:
            if y != v and y not in side:
                side.add(y)
                stack.append(y)

    def below(view):
        out, stack = {}, [v]
        while stack:
            x = stack.pop()
            out[x] = tuple(view.children[x])
            stack.extend(view.children[x])
        return out

    shapes = {tuple(sorted(below(root_at(t, s)).items())) for s in side}
    assert len(shapes) == 1


def test_tree_from_edges_ids():
    t = tree_from_edges(["A", "B"], [(0, 1)], prefix="q")
    assert t.ids == ("q0", "q1")
