"""Table storage, kernel dispatch and traceback shared by both engines."""

from __future__ import annotations

import math

import numpy as np

from ._backend import get_kernel
from ._contexts import ContextSystem, Plan, TSide, WeightArrays, weight_arrays
from .embedding import Embedding
from .matching import solve_mwm
from .weights import WeightScheme

RTR = "rtr"
SK = "sk"
TYPES = (RTR, SK)
NEG_INF = -math.inf


class Tables:
    """``L(u, ctx, t)`` for every T-vertex ``u`` and context ``ctx`` of T'.

    Stored as two ``(n_ctx, |T|)`` arrays so that one context column is
    contiguous. Backpointers are not kept: traceback re-derives the choice
    at each visited entry from neighbouring entries, re-solving one small
    matching per mapped pair.
    """

    def __init__(self, ts: TSide, sys: ContextSystem, scheme: WeightScheme):
        self.ts = ts
        self.sys = sys
        self.scheme = scheme
        self.wa: WeightArrays = weight_arrays(ts, sys, scheme)
        n1 = len(ts.post)
        self.rtr = np.full((sys.n_ctx, n1), NEG_INF)
        self.sk = np.full((sys.n_ctx, n1), NEG_INF)
        self.filled = np.zeros(sys.n_ctx, dtype=np.uint8)
        self.solves = np.zeros((n1, len(sys.tree)), dtype=np.int32)
        self.stats = np.zeros(4, dtype=np.int64)

    def run(self, plan: Plan, kernel=None) -> "Tables":
        k = get_kernel(kernel)
        k.run_plan(plan, self.ts, self.wa, self.rtr, self.sk, self.filled, self.solves,
                   self.stats)
        return self

    @property
    def table(self):
        return {RTR: self.rtr, SK: self.sk}

    def stat_dict(self) -> dict:
        n_solves, n_derived, n_entries, work = (int(x) for x in self.stats)
        return {
            "table_entries": n_entries,
            "matching_solves": n_solves,
            "derived_deletions": n_derived,
            "work_units": work,
        }

    def _child_matrix(self, u: int, ctx: int):
        ts, wa = self.ts, self.wa
        kids = ts.child[ts.child_ptr[u]:ts.child_ptr[u + 1]].tolist()
        nbs = list(self.sys.children(ctx))
        W = [
            [max(self.sk[cc, c], self.rtr[cc, c] + wa.ew[ts.elab[c], el]) for cc, _, el in nbs]
            for c in kids
        ]
        return kids, nbs, W

    def trace(self, u: int, ctx: int, t: str = RTR):
        """Index pairs and skipped vertices of an embedding realizing ``L(u, ctx, t)``.

        Pairs come out top-down, so the first pair is the embedding's top.
        """
        value = self.table[t][ctx, u]
        if value == NEG_INF:
            raise ValueError(f"entry ({u}, {ctx}, {t}) is -inf; nothing to trace")
        ts, sys = self.ts, self.sys
        p = self.wa.penalty
        pairs: list[tuple[int, int]] = []
        skipped: list[tuple[int, int]] = []
        stack = [(u, ctx, t)]
        while stack:
            u, ctx, t = stack.pop()
            v = int(sys.vertex[ctx])
            if t == RTR:
                pairs.append((u, v))
                kids, nbs, W = self._child_matrix(u, ctx)
                if not kids or not nbs:
                    continue
                m = solve_mwm(W)
                for i, j in reversed(m.pairs):
                    c = kids[i]
                    cc = nbs[j][0]
                    via_rtr = self.rtr[cc, c] + self.wa.ew[ts.elab[c], nbs[j][2]]
                    stack.append((c, cc, RTR if via_rtr >= self.sk[cc, c] else SK))
                continue
            target = self.sk[ctx, u]
            kids = ts.child[ts.child_ptr[u]:ts.child_ptr[u + 1]].tolist()
            nxt = None
            for c in kids:
                for tt in TYPES:
                    if self.table[tt][ctx, c] - p == target:
                        nxt, skip = (c, ctx, tt), (1, u)
                        break
                if nxt:
                    break
            if nxt is None:
                for cc, _, _ in sys.children(ctx):
                    for tt in TYPES:
                        if self.table[tt][cc, u] - p == target:
                            nxt, skip = (u, cc, tt), (2, v)
                            break
                    if nxt:
                        break
            if nxt is None:  # pragma: no cover - tables are internally consistent
                raise RuntimeError(f"no case reproduces skipped entry ({u}, {ctx})")
            skipped.append(skip)
            stack.append(nxt)
        return pairs, skipped


def to_embedding(tables: Tables, pairs, skipped, weight: float, roots=None, stats=None):
    ids1 = tables.ts.view.tree.ids
    ids2 = tables.sys.tree.ids
    named = tuple((ids1[a], ids2[b]) for a, b in pairs)
    skip = tuple((side, (ids1 if side == 1 else ids2)[x]) for side, x in skipped)
    if roots is None and named:
        roots = named[0]
    return Embedding(named, float(weight), roots, skip, dict(stats or {}))
