"""Labeled trees, rooted views and directed contexts.

Tree file format (UTF-8, one declaration per line)::

    # comment
    v <id> <label>
    e <id1> <id2> [<label>]

Edge labels default to ``-``. The order of ``v`` lines fixes the internal
vertex indices, which in turn fixes child order everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

DEFAULT_LABEL = "-"


class TreeError(ValueError):
    """Invalid tree structure or malformed tree file."""

    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class LabeledTree:
    """Immutable tree with vertex and edge labels.

    Vertices are addressed by dense indices ``0..n-1`` in declaration order;
    ``ids[i]`` and ``labels[i]`` give the external id and label of vertex i.
    ``adjacency[i]`` lists neighbor indices in increasing order.
    """

    __slots__ = ("ids", "labels", "edges", "index", "adjacency", "_edge_labels")

    def __init__(
        self,
        vertices: Sequence[tuple[str, str]],
        edges: Sequence[tuple[str, str, str]] = (),
    ):
        if not vertices:
            raise TreeError("empty tree")
        ids = tuple(str(v) for v, _ in vertices)
        index: dict[str, int] = {}
        for i, vid in enumerate(ids):
            if vid in index:
                raise TreeError(f"duplicate vertex id {vid!r}")
            index[vid] = i
        if len(edges) != len(ids) - 1:
            raise TreeError(
                f"a tree on {len(ids)} vertices needs {len(ids) - 1} edges, got {len(edges)}"
            )
        uf = _UnionFind(len(ids))
        adjacency: list[list[int]] = [[] for _ in ids]
        edge_list = []
        edge_labels = {}
        for a, b, label in edges:
            i, j = _endpoint(index, a), _endpoint(index, b)
            if i == j:
                raise TreeError(f"self-loop at {a!r}")
            if not uf.union(i, j):
                raise TreeError(f"cycle detected at edge {a!r}-{b!r}")
            adjacency[i].append(j)
            adjacency[j].append(i)
            edge_list.append((i, j, str(label)))
            edge_labels[(min(i, j), max(i, j))] = str(label)
        self.ids = ids
        self.labels = tuple(str(lab) for _, lab in vertices)
        self.edges = tuple(edge_list)
        self.index = index
        self.adjacency = tuple(tuple(sorted(nb)) for nb in adjacency)
        self._edge_labels = edge_labels

    def __len__(self) -> int:
        return len(self.ids)

    def __repr__(self) -> str:
        return f"LabeledTree(n={len(self)}, ids={list(self.ids)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledTree):
            return NotImplemented
        return (
            self.ids == other.ids
            and self.labels == other.labels
            and self._edge_labels == other._edge_labels
        )

    def __hash__(self) -> int:
        return hash((self.ids, self.labels, tuple(sorted(self._edge_labels.items()))))

    def edge_label(self, i: int, j: int) -> str:
        """Label of the edge between vertex indices ``i`` and ``j``."""
        return self._edge_labels[(min(i, j), max(i, j))]

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])

    @property
    def max_degree(self) -> int:
        return max(len(nb) for nb in self.adjacency)

    def root_at(self, root: str) -> "RootedView":
        return root_at(self, root)


def _endpoint(index: dict[str, int], vid: str) -> int:
    try:
        return index[str(vid)]
    except KeyError:
        raise TreeError(f"unknown endpoint {vid!r}") from None


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class RootedView:
    """A tree together with a root; index-based parent and children maps.

    ``parent[root] == root``. ``children[v]`` is ordered by vertex index.
    """

    tree: LabeledTree
    root: int
    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    preorder: tuple[int, ...]

    @property
    def postorder(self) -> tuple[int, ...]:
        # reversed preorder visits every child before its parent
        return self.preorder[::-1]

    def children_of(self, vid: str) -> list[str]:
        ids = self.tree.ids
        return [ids[c] for c in self.children[self.tree.index[vid]]]

    def parent_of(self, vid: str) -> str:
        return self.tree.ids[self.parent[self.tree.index[vid]]]

    def depth(self) -> list[int]:
        depth = [0] * len(self.tree)
        for v in self.preorder:
            if v != self.root:
                depth[v] = depth[self.parent[v]] + 1
        return depth


def root_at(tree: LabeledTree, root) -> RootedView:
    """Root ``tree`` at ``root`` (an id, or an index when given an int)."""
    if isinstance(root, int) and not isinstance(root, bool):
        if not 0 <= root < len(tree):
            raise TreeError(f"unknown root index {root}")
        r = root
    else:
        if root not in tree.index:
            raise TreeError(f"unknown root {root!r}")
        r = tree.index[root]
    n = len(tree)
    parent = [-1] * n
    parent[r] = r
    children: list[tuple[int, ...]] = [()] * n
    preorder = []
    stack = [r]
    while stack:
        v = stack.pop()
        preorder.append(v)
        # parent[r] == r never matches a neighbor of r
        kids = tuple(c for c in tree.adjacency[v] if c != parent[v])
        children[v] = kids
        for c in kids:
            parent[c] = v
        stack.extend(reversed(kids))
    return RootedView(tree, r, tuple(parent), tuple(children), tuple(preorder))


@dataclass(frozen=True)
class DirectedContext:
    """Vertex ``vertex`` seen from neighbor ``parent``; ``parent is None`` is ROOT."""

    vertex: str
    parent: Optional[str]

    @property
    def is_root(self) -> bool:
        return self.parent is None

    def __str__(self) -> str:
        return f"{self.vertex}@{'ROOT' if self.parent is None else self.parent}"


def directed_contexts(tree: LabeledTree) -> list[DirectedContext]:
    """All ``2|E| + |V|`` contexts: every directed edge first, then every ROOT.

    The position of a context in this list is its context index in the
    unrooted engine's tables.
    """
    ids = tree.ids
    out = [
        DirectedContext(ids[v], ids[w]) for v in range(len(tree)) for w in tree.adjacency[v]
    ]
    out.extend(DirectedContext(vid, None) for vid in ids)
    return out


def parse_tree(text: str) -> LabeledTree:
    vertices: list[tuple[str, str]] = []
    edges: list[tuple[str, str, str]] = []
    seen: dict[str, int] = {}
    uf_index: dict[str, int] = {}
    uf = _UnionFind(0)
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "v" and len(parts) in (2, 3):
            vid = parts[1]
            if vid in seen:
                raise TreeError(f"duplicate vertex id {vid!r} (first declared on line {seen[vid]})", lineno)
            seen[vid] = lineno
            vertices.append((vid, parts[2] if len(parts) == 3 else DEFAULT_LABEL))
            uf_index[vid] = len(uf.parent)
            uf.parent.append(len(uf.parent))
        elif kind == "e" and len(parts) in (3, 4):
            a, b = parts[1], parts[2]
            for x in (a, b):
                if x not in seen:
                    raise TreeError(f"unknown endpoint {x!r}", lineno)
            if a == b:
                raise TreeError(f"self-loop at {a!r}", lineno)
            if not uf.union(uf_index[a], uf_index[b]):
                raise TreeError(f"cycle detected at edge {a!r}-{b!r}", lineno)
            edges.append((a, b, parts[3] if len(parts) == 4 else DEFAULT_LABEL))
        else:
            raise TreeError(f"malformed line {line!r}", lineno)
    if not vertices:
        raise TreeError("empty tree", last or None)
    if len(edges) != len(vertices) - 1:
        raise TreeError(
            f"disconnected: {len(vertices)} vertices but only {len(edges)} edges", last
        )
    return LabeledTree(vertices, edges)


def serialize_tree(tree: LabeledTree) -> str:
    lines = [f"v {vid} {lab}" for vid, lab in zip(tree.ids, tree.labels)]
    lines += [f"e {tree.ids[i]} {tree.ids[j]} {lab}" for i, j, lab in tree.edges]
    return "\n".join(lines) + "\n"


def read_tree(path) -> LabeledTree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())


def tree_from_edges(
    labels: Sequence[str],
    edges: Iterable[tuple[int, int]],
    edge_labels: Optional[Sequence[str]] = None,
    prefix: str = "",
) -> LabeledTree:
    """Build a tree with ids ``f"{prefix}{i}"`` from index-based edges."""
    edges = list(edges)
    if edge_labels is None:
        edge_labels = [DEFAULT_LABEL] * len(edges)
    verts = [(f"{prefix}{i}", lab) for i, lab in enumerate(labels)]
    return LabeledTree(
        verts, [(f"{prefix}{a}", f"{prefix}{b}", el) for (a, b), el in zip(edges, edge_labels)]
    )
