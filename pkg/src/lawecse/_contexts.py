"""Context systems and evaluation plans for the table-filling kernels.

A *context* names one rooted subtree of T': vertex ``v`` seen from a parent
neighbor ``w`` (the subtree below ``v`` away from ``w``), or ``v`` as the
root. Table columns are indexed by context, so every rooting of T' that
contains the same subtree shares the same column.

A *plan* is the ordered list of steps a kernel executes, each step covering
all T-vertices in postorder:

* ``SINGLE`` fills one context from its child contexts (one matching solve
  per T-vertex).
* ``MAIN`` fills every context of a vertex ``v`` at once: the ROOT context
  from the matching over all of ``N(v)``, and each ``v@x`` from the same
  matching with ``x`` deleted. Contexts already marked filled are left alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .trees import LabeledTree, RootedView, root_at
from .weights import WeightScheme

SINGLE = 0
MAIN = 1


@dataclass(frozen=True)
class ContextSystem:
    tree: LabeledTree
    vertex: np.ndarray        # ctx -> vertex
    parent: np.ndarray        # ctx -> parent vertex, -1 for ROOT
    child_ptr: np.ndarray     # CSR over child contexts
    child_ctx: np.ndarray
    child_vertex: np.ndarray
    child_elabel: np.ndarray  # edge label id of (vertex, child)
    edge_labels: tuple        # edge label id -> label

    @property
    def n_ctx(self) -> int:
        return len(self.vertex)

    def children(self, ctx: int):
        a, b = self.child_ptr[ctx], self.child_ptr[ctx + 1]
        return zip(self.child_ctx[a:b].tolist(), self.child_vertex[a:b].tolist(),
                   self.child_elabel[a:b].tolist())


def _label_ids(labels):
    uniq = sorted(set(labels))
    pos = {lab: i for i, lab in enumerate(uniq)}
    return tuple(uniq), pos


def _edge_label_table(tree: LabeledTree):
    return _label_ids(lab for _, _, lab in tree.edges)


class UnrootedIndex:
    """Context ids for all rootings of a tree: ``2|E|`` directed + ``|V|`` ROOT."""

    def __init__(self, tree: LabeledTree):
        self.tree = tree
        n = len(tree)
        ptr = [0]
        for v in range(n):
            ptr.append(ptr[-1] + tree.degree(v))
        self.adj_ptr = ptr
        self.n_directed = ptr[-1]
        self._pos = [{x: k for k, x in enumerate(tree.adjacency[v])} for v in range(n)]

    def directed(self, v: int, parent: int) -> int:
        return self.adj_ptr[v] + self._pos[v][parent]

    def root(self, v: int) -> int:
        return self.n_directed + v

    def ctx(self, v: int, parent=None) -> int:
        return self.root(v) if parent is None else self.directed(v, parent)


def unrooted_system(tree: LabeledTree) -> tuple[ContextSystem, UnrootedIndex]:
    idx = UnrootedIndex(tree)
    labels, lpos = _edge_label_table(tree)
    n = len(tree)
    vertex, parent = [], []
    ptr, cctx, cvert, celab = [0], [], [], []

    def add(v, excluded):
        vertex.append(v)
        parent.append(-1 if excluded is None else excluded)
        for c in tree.adjacency[v]:
            if c != excluded:
                cctx.append(idx.directed(c, v))
                cvert.append(c)
                celab.append(lpos[tree.edge_label(v, c)])
        ptr.append(len(cctx))

    for v in range(n):
        for w in tree.adjacency[v]:
            add(v, w)
    for v in range(n):
        add(v, None)
    sys = ContextSystem(
        tree,
        np.array(vertex, dtype=np.int64),
        np.array(parent, dtype=np.int64),
        np.array(ptr, dtype=np.int64),
        np.array(cctx, dtype=np.int64),
        np.array(cvert, dtype=np.int64),
        np.array(celab, dtype=np.int64),
        labels,
    )
    return sys, idx


def rooted_system(view: RootedView) -> ContextSystem:
    """One context per vertex of the rooted tree; context id == vertex index."""
    tree = view.tree
    labels, lpos = _edge_label_table(tree)
    n = len(tree)
    ptr, cctx, celab = [0], [], []
    for v in range(n):
        for c in view.children[v]:
            cctx.append(c)
            celab.append(lpos[tree.edge_label(v, c)])
        ptr.append(len(cctx))
    parent = [-1 if v == view.root else view.parent[v] for v in range(n)]
    return ContextSystem(
        tree,
        np.arange(n, dtype=np.int64),
        np.array(parent, dtype=np.int64),
        np.array(ptr, dtype=np.int64),
        np.array(cctx, dtype=np.int64),
        np.array(cctx, dtype=np.int64),
        np.array(celab, dtype=np.int64),
        labels,
    )


@dataclass(frozen=True)
class Plan:
    kind: np.ndarray     # SINGLE / MAIN
    vertex: np.ndarray   # T' vertex of the step
    ctx: np.ndarray      # SINGLE: context filled; MAIN: the ROOT context
    seg: np.ndarray      # CSR offsets into the arrays below
    nb_ctx: np.ndarray   # child contexts (matching columns)
    nb_elab: np.ndarray  # edge label ids towards those children
    out_ctx: np.ndarray  # MAIN: context v@x produced by deleting column x

    def __len__(self) -> int:
        return len(self.kind)


class _PlanBuilder:
    def __init__(self):
        self.kind, self.vertex, self.ctx = [], [], []
        self.seg = [0]
        self.nb_ctx, self.nb_elab, self.out_ctx = [], [], []

    def add(self, kind, v, ctx, nbs, outs=None):
        self.kind.append(kind)
        self.vertex.append(v)
        self.ctx.append(ctx)
        for k, (cc, el) in enumerate(nbs):
            self.nb_ctx.append(cc)
            self.nb_elab.append(el)
            self.out_ctx.append(-1 if outs is None else outs[k])
        self.seg.append(len(self.nb_ctx))

    def build(self) -> Plan:
        arr = lambda x: np.array(x, dtype=np.int64)
        return Plan(arr(self.kind), arr(self.vertex), arr(self.ctx), arr(self.seg),
                    arr(self.nb_ctx), arr(self.nb_elab), arr(self.out_ctx))


def rooted_plan(sys: ContextSystem, view: RootedView) -> Plan:
    pb = _PlanBuilder()
    for v in view.postorder:
        pb.add(SINGLE, v, v, [(cc, el) for cc, _, el in sys.children(v)])
    return pb.build()


def unrooted_plan(sys: ContextSystem, idx: UnrootedIndex, start: int = 0) -> Plan:
    """Two sweeps over T' rooted at ``start``.

    The downward sweep fills ``v@parent(v)`` bottom-up, one standalone solve
    each. The top-down sweep then meets every vertex with all neighbor
    contexts ``x@v`` already available, so one main solve per vertex yields
    its ROOT context and every remaining ``v@x`` by deletion.
    """
    tree = sys.tree
    view = root_at(tree, start)
    pb = _PlanBuilder()
    for v in view.postorder:
        if v == view.root:
            continue
        ctx = idx.directed(v, view.parent[v])
        pb.add(SINGLE, v, ctx, [(cc, el) for cc, _, el in sys.children(ctx)])
    for v in view.preorder:
        root_ctx = idx.root(v)
        nbs = [(cc, el) for cc, _, el in sys.children(root_ctx)]
        outs = [idx.directed(v, x) for x in tree.adjacency[v]]
        pb.add(MAIN, v, root_ctx, nbs, outs)
    return pb.build()


@dataclass(frozen=True)
class TSide:
    """Arrays describing T rooted at its fixed root, for the kernels."""

    view: RootedView
    post: np.ndarray
    child_ptr: np.ndarray
    child: np.ndarray
    elab: np.ndarray          # label id of the edge to the parent, -1 at the root
    vlab: np.ndarray
    vertex_labels: tuple
    edge_labels: tuple


def t_side(view: RootedView) -> TSide:
    tree = view.tree
    vlabels, vpos = _label_ids(tree.labels)
    elabels, epos = _edge_label_table(tree)
    n = len(tree)
    ptr, child = [0], []
    for v in range(n):
        child.extend(view.children[v])
        ptr.append(len(child))
    elab = [
        -1 if v == view.root else epos[tree.edge_label(v, view.parent[v])] for v in range(n)
    ]
    arr = lambda x: np.array(x, dtype=np.int64)
    return TSide(view, arr(view.postorder), arr(ptr), arr(child), arr(elab),
                 arr([vpos[lab] for lab in tree.labels]), vlabels, elabels)


@dataclass(frozen=True)
class WeightArrays:
    vw: np.ndarray    # T vertex label id x T' vertex label id
    ew: np.ndarray    # T edge label id x T' edge label id
    vlab2: np.ndarray
    penalty: float


def weight_arrays(ts: TSide, sys: ContextSystem, scheme: WeightScheme) -> WeightArrays:
    tree2 = sys.tree
    vlabels2, vpos2 = _label_ids(tree2.labels)
    vw = scheme.vertex_matrix(ts.vertex_labels, vlabels2)
    ew = scheme.edge_matrix(ts.edge_labels, sys.edge_labels)
    # kernels index these as 2-d arrays even when a tree has no edges
    if ew.size == 0:
        ew = np.zeros((max(1, len(ts.edge_labels)), max(1, len(sys.edge_labels))))
    vlab2 = np.array([vpos2[lab] for lab in tree2.labels], dtype=np.int64)
    return WeightArrays(np.ascontiguousarray(vw), np.ascontiguousarray(ew), vlab2,
                        float(scheme.penalty))


class LeaveOneOutMax:
    """Maximum of a sequence with any single position excluded, in O(1) per query."""

    __slots__ = ("best", "best_index", "second")

    def __init__(self, values):
        best, best_index, second = -np.inf, -1, -np.inf
        for i, x in enumerate(values):
            if x > best:
                best, best_index, second = x, i, best
            elif x > second:
                second = x
        self.best = best
        self.best_index = best_index
        self.second = second

    def query(self, exclude=None) -> float:
        if exclude is not None and exclude == self.best_index:
            return self.second
        return self.best
