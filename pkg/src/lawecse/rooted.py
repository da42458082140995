"""Largest weight common subtree embeddings between two rooted trees.

For every pair of T-vertex ``u`` and T'-vertex ``v`` two values are kept:

* ``L(u, v, rtr)``: best embedding of the subtrees below ``u`` and ``v`` that
  maps ``u`` to ``v``. It is ``w(u, v)`` plus a maximum weight matching
  between the children of ``u`` and of ``v``, where child pair ``(b, c)`` is
  worth ``max(L(b, c, sk), L(b, c, rtr) + w(edge ub, edge vc))``.
* ``L(u, v, sk)``: best embedding in which ``u`` or ``v`` is skipped, i.e.
  the best entry of either type at ``(b, v)`` for a child ``b`` of ``u`` or
  at ``(u, c)`` for a child ``c`` of ``v``, minus the penalty.

Entries are filled leaves-first; each mapped edge whose two paths both have
length 1 collects its edge-pair weight, every skipped vertex pays the
penalty once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ._contexts import rooted_plan, rooted_system, t_side
from ._engine import NEG_INF, RTR, SK, Tables, to_embedding
from .embedding import Embedding
from .trees import LabeledTree, RootedView, root_at
from .weights import WeightScheme

__all__ = ["DPTable", "RTR", "SK", "compute_tables", "lawecse_rooted", "root_to_root", "traceback"]


@dataclass
class DPTable:
    """Filled rooted DP table; entries are addressed by vertex ids."""

    Tr: RootedView
    Ts: RootedView
    tables: Tables

    def value(self, u: str, v: str, t: str = RTR) -> float:
        ui = self.Tr.tree.index[u]
        vi = self.Ts.tree.index[v]
        return float(self.tables.table[t][vi, ui])

    def array(self, t: str = RTR) -> np.ndarray:
        """``(|T|, |T'|)`` array of type-``t`` entries, indexed by vertex index."""
        return self.tables.table[t].T.copy()

    @property
    def stats(self) -> dict:
        return self.tables.stat_dict()


def _view(tree_or_view: Union[RootedView, LabeledTree], root=None) -> RootedView:
    if isinstance(tree_or_view, RootedView):
        return tree_or_view
    return root_at(tree_or_view, tree_or_view.ids[0] if root is None else root)


def compute_tables(Tr: RootedView, Ts: RootedView, scheme: WeightScheme,
                   kernel: Optional[str] = None) -> DPTable:
    Tr, Ts = _view(Tr), _view(Ts)
    sys = rooted_system(Ts)
    tables = Tables(t_side(Tr), sys, scheme).run(rooted_plan(sys, Ts), kernel)
    return DPTable(Tr, Ts, tables)


def traceback(table: DPTable, start: tuple[str, str], t: str = RTR) -> Embedding:
    """Reconstruct the embedding behind entry ``L(start, t)``."""
    u = table.Tr.tree.index[start[0]]
    v = table.Ts.tree.index[start[1]]
    value = table.tables.table[t][v, u]
    if value == NEG_INF:
        raise ValueError(f"entry {start} of type {t} is -inf")
    pairs, skipped = table.tables.trace(u, v, t)
    roots = (table.Tr.tree.ids[table.Tr.root], table.Ts.tree.ids[table.Ts.root])
    return to_embedding(table.tables, pairs, skipped, value, roots, table.stats)


def lawecse_rooted(Tr: RootedView, Ts: RootedView, scheme: WeightScheme,
                   kernel: Optional[str] = None) -> Embedding:
    """Best embedding between the rooted trees, topmost pair anywhere."""
    table = compute_tables(Tr, Ts, scheme, kernel)
    rtr = table.tables.rtr
    flat = int(np.argmax(rtr))
    v, u = divmod(flat, rtr.shape[1])
    if rtr[v, u] == NEG_INF:
        return Embedding.infeasible(table.stats)
    return traceback(table, (table.Tr.tree.ids[u], table.Ts.tree.ids[v]))


def root_to_root(Tr: RootedView, Ts: RootedView, scheme: WeightScheme,
                 kernel: Optional[str] = None) -> Embedding:
    """Best embedding that maps the root of ``Tr`` onto the root of ``Ts``."""
    table = compute_tables(Tr, Ts, scheme, kernel)
    r, s = table.Tr.root, table.Ts.root
    if table.tables.rtr[s, r] == NEG_INF:
        return Embedding.infeasible(table.stats)
    return traceback(table, (table.Tr.tree.ids[r], table.Ts.tree.ids[s]))
