"""Largest weight common subtree embeddings between unrooted trees.

T is rooted once at a fixed vertex ``r``; T' is handled for all of its
rootings at once through contexts (see ``_contexts``). The optimum is the
larger of

* ``M1``: the best root-to-root entry over every T-vertex and every context,
  i.e. the best embedding whose topmost T-vertex is mapped, and
* ``M2``: embeddings whose topmost T-vertex ``u`` (w.r.t. ``r``) is skipped.
  Such a ``u`` sits inside a single topological path that descends into two
  different children ``b1 != b2``; the path's image in T' contains some edge
  ``vw`` whose two sides host the two halves. Its weight is
  ``max_t L(b1, v@w, t) + max_t L(b2, w@v, t) - p``; for fixed ``u`` and
  ``vw`` the best pair of distinct children is found from the top two
  entries of each side.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ._contexts import LeaveOneOutMax, t_side, unrooted_plan, unrooted_system
from ._engine import NEG_INF, RTR, SK, Tables, to_embedding
from .embedding import Embedding
from .rooted import compute_tables
from .trees import LabeledTree, root_at
from .weights import WeightScheme

__all__ = [
    "ContextTable",
    "LeaveOneOutMax",
    "compute_all_context_tables",
    "lawecse_unrooted",
    "m1",
    "m2",
    "naive_unrooted",
]


class ContextTable:
    """Entries ``L(u, v@w, t)`` for T rooted at ``r`` and every context of T'."""

    def __init__(self, T: LabeledTree, r: int, T2: LabeledTree, tables: Tables, index):
        self.T = T
        self.r = r
        self.T2 = T2
        self.tables = tables
        self.index = index

    def ctx(self, v: str, parent: Optional[str] = None) -> int:
        vi = self.T2.index[v]
        return self.index.ctx(vi, None if parent is None else self.T2.index[parent])

    def value(self, u: str, v: str, parent: Optional[str] = None, t: str = RTR) -> float:
        return float(self.tables.table[t][self.ctx(v, parent), self.T.index[u]])

    @property
    def solves(self) -> np.ndarray:
        """From-scratch matching solves per ``(u, v)`` pair, shape ``(|T|, |T'|)``."""
        return self.tables.solves

    @property
    def stats(self) -> dict:
        return self.tables.stat_dict()


def compute_all_context_tables(T: LabeledTree, r, T2: LabeledTree, scheme: WeightScheme,
                               kernel: Optional[str] = None) -> ContextTable:
    view = root_at(T, r)
    sys, idx = unrooted_system(T2)
    plan = unrooted_plan(sys, idx, start=0)
    tables = Tables(t_side(view), sys, scheme).run(plan, kernel)
    return ContextTable(T, view.root, T2, tables, idx)


def m1(ct: ContextTable):
    """Best root-to-root entry; witness ``(u, ctx)`` in indices, or ``None``."""
    rtr = ct.tables.rtr
    flat = int(np.argmax(rtr))
    ctx, u = divmod(flat, rtr.shape[1])
    value = float(rtr[ctx, u])
    if value == NEG_INF:
        return NEG_INF, None
    return value, (u, ctx)


def m2(ct: ContextTable):
    """Best embedding whose top T-vertex is skipped.

    Witness is ``(u, ctx_vw, b1, ctx_wv, b2)`` in indices, or ``None``.
    """
    tables = ct.tables
    p = tables.wa.penalty
    edges = ct.T2.edges
    if p == np.inf or not edges:
        return NEG_INF, None
    idx = ct.index
    best = np.maximum(tables.rtr, tables.sk)
    ctx_vw = np.array([idx.directed(v, w) for v, w, _ in edges], dtype=np.int64)
    ctx_wv = np.array([idx.directed(w, v) for v, w, _ in edges], dtype=np.int64)
    A = best[ctx_vw]
    B = best[ctx_wv]
    view = tables.ts.view
    rows = np.arange(len(edges))
    top, witness = NEG_INF, None
    for u in view.preorder:
        kids = view.children[u]
        if len(kids) < 2:
            continue
        X = A[:, kids]
        Y = B[:, kids]
        ix = np.argsort(-X, axis=1, kind="stable")[:, :2]
        iy = np.argsort(-Y, axis=1, kind="stable")[:, :2]
        x1, x2 = X[rows, ix[:, 0]], X[rows, ix[:, 1]]
        y1, y2 = Y[rows, iy[:, 0]], Y[rows, iy[:, 1]]
        same = ix[:, 0] == iy[:, 0]
        alt_a = x1 + y2
        alt_b = x2 + y1
        val = np.where(same, np.maximum(alt_a, alt_b), x1 + y1)
        e = int(np.argmax(val))
        if val[e] > top:
            top = float(val[e])
            if not same[e]:
                i1, i2 = ix[e, 0], iy[e, 0]
            elif alt_a[e] >= alt_b[e]:
                i1, i2 = ix[e, 0], iy[e, 1]
            else:
                i1, i2 = ix[e, 1], iy[e, 0]
            witness = (u, int(ctx_vw[e]), kids[i1], int(ctx_wv[e]), kids[i2])
    if top == NEG_INF:
        return NEG_INF, None
    return top - p, witness


def _best_type(tables: Tables, u: int, ctx: int) -> str:
    return RTR if tables.rtr[ctx, u] >= tables.sk[ctx, u] else SK


def lawecse_unrooted(T: LabeledTree, T2: LabeledTree, scheme: WeightScheme,
                     root=None, kernel: Optional[str] = None) -> Embedding:
    """Best embedding over all rootings of both trees.

    ``root`` fixes the root of ``T`` used internally (default: first declared
    vertex); the optimum does not depend on it.
    """
    ct = compute_all_context_tables(T, T.ids[0] if root is None else root, T2, scheme, kernel)
    w1, wit1 = m1(ct)
    w2, wit2 = m2(ct)
    tables = ct.tables
    stats = ct.stats
    if w1 == NEG_INF and w2 == NEG_INF:
        return Embedding.infeasible(stats)
    if w1 >= w2:
        pairs, skipped = tables.trace(*wit1, RTR)
        return to_embedding(tables, pairs, skipped, w1, stats=stats)
    u, c1, b1, c2, b2 = wit2
    pairs1, skip1 = tables.trace(b1, c1, _best_type(tables, b1, c1))
    pairs2, skip2 = tables.trace(b2, c2, _best_type(tables, b2, c2))
    return to_embedding(tables, pairs1 + pairs2, skip1 + [(1, u)] + skip2, w2, stats=stats)


def naive_unrooted(T: LabeledTree, T2: LabeledTree, scheme: WeightScheme,
                   kernel: Optional[str] = None) -> Embedding:
    """One rooted computation per root pair; reference for the context engine."""
    best_val, best = NEG_INF, None
    totals: dict = {}
    for r in T.ids:
        Tr = root_at(T, r)
        for s in T2.ids:
            table = compute_tables(Tr, root_at(T2, s), scheme, kernel)
            for key, x in table.stats.items():
                totals[key] = totals.get(key, 0) + x
            rtr = table.tables.rtr
            flat = int(np.argmax(rtr))
            v, u = divmod(flat, rtr.shape[1])
            if rtr[v, u] > best_val:
                best_val, best = float(rtr[v, u]), (table, u, v)
    if best is None:
        return Embedding.infeasible(totals)
    table, u, v = best
    pairs, skipped = table.tables.trace(u, v, RTR)
    return to_embedding(table.tables, pairs, skipped, best_val, stats=totals)
