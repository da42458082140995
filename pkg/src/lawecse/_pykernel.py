"""Pure-Python table-filling kernel.

Same contract and the same floating-point operation order as the compiled
kernel in ``_ckernel.pyx``; used when the extension is unavailable or when
``LAWECSE_PURE_PYTHON=1`` is set.
"""

from __future__ import annotations

import math

import numpy as np

from ._contexts import MAIN, LeaveOneOutMax
from .matching import SaturatingAssignment

NEG_INF = -math.inf

# stats slots
N_SOLVES, N_DERIVED, N_ENTRIES, WORK = range(4)


def _solve_cost(s: int, t: int) -> int:
    return s * s * (t + s)


def solve_right_deletions(W: list[list[float]]):
    """Base weight and per-column deletion weights of a ``k x l`` instance."""
    k, l = len(W), len(W[0])
    if k <= l:
        asg = SaturatingAssignment(W)
        dels = [asg.delete_col(c)[0] for c in range(l)]
    else:
        asg = SaturatingAssignment([list(col) for col in zip(*W)])
        dels = [asg.delete_row(c)[0] for c in range(l)]
    return asg.weight, dels, asg


def mwm_weight(W) -> float:
    W = np.asarray(W, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] == 0 or W.shape[1] == 0:
        return 0.0
    rows = W.tolist() if W.shape[0] <= W.shape[1] else W.T.tolist()
    return SaturatingAssignment(rows).weight


def mwm_right_deletions(W):
    W = np.asarray(W, dtype=np.float64)
    if W.shape[0] == 0 or W.shape[1] == 0:
        return 0.0, np.zeros(W.shape[1])
    base, dels, _ = solve_right_deletions(W.tolist())
    return base, np.array(dels)


def run_plan(plan, ts, wa, RTR, SK, filled, solves, stats):
    """Execute ``plan`` in place on the ``(n_ctx, |T|)`` tables ``RTR`` / ``SK``."""
    R = RTR.tolist()
    S = SK.tolist()
    fill = filled.tolist()
    sol = solves.tolist()
    st = [int(x) for x in stats]

    post = ts.post.tolist()
    cptr = ts.child_ptr.tolist()
    cidx = ts.child.tolist()
    kids_of = [cidx[cptr[u]:cptr[u + 1]] for u in range(len(cptr) - 1)]
    elab = ts.elab.tolist()
    vlab = ts.vlab.tolist()
    VW = wa.vw.tolist()
    EW = wa.ew.tolist()
    vlab2 = wa.vlab2.tolist()
    p = wa.penalty
    can_skip = p != math.inf

    seg = plan.seg.tolist()
    nb_ctx = plan.nb_ctx.tolist()
    nb_elab = plan.nb_elab.tolist()
    out_ctx = plan.out_ctx.tolist()

    for step, (kind, v, ctx) in enumerate(
        zip(plan.kind.tolist(), plan.vertex.tolist(), plan.ctx.tolist())
    ):
        a, b = seg[step], seg[step + 1]
        nbs = list(zip(nb_ctx[a:b], nb_elab[a:b]))
        vrow = vlab2[v]
        if kind == MAIN:
            targets = [(ctx, None)] + [
                (o, i) for i, o in enumerate(out_ctx[a:b]) if not fill[o]
            ]
        else:
            targets = [(ctx, None)]
        for u in post:
            kids = kids_of[u]
            # skipped entries
            if can_skip:
                if kind == MAIN:
                    loo = LeaveOneOutMax([max(R[cc][u], S[cc][u]) for cc, _ in nbs])
                for o, excl in targets:
                    if kind == MAIN:
                        best = loo.query(excl)
                    else:
                        best = NEG_INF
                        for cc, _ in nbs:
                            best = max(best, R[cc][u], S[cc][u])
                    Ro, So = R[o], S[o]
                    for c in kids:
                        best = max(best, Ro[c], So[c])
                    S[o][u] = best - p
            else:
                for o, _ in targets:
                    S[o][u] = NEG_INF
            st[N_ENTRIES] += 2 * len(targets)
            # root-to-root entries
            w = VW[vlab[u]][vrow]
            if w == NEG_INF or not kids or not nbs:
                for o, _ in targets:
                    R[o][u] = w
                continue
            W = [
                [max(S[cc][c], R[cc][c] + EW[elab[c]][el]) for cc, el in nbs]
                for c in kids
            ]
            k, l = len(kids), len(nbs)
            s, t = min(k, l), max(k, l)
            st[WORK] += k * l + _solve_cost(s, t)
            sol[u][v] += 1
            st[N_SOLVES] += 1
            if kind == MAIN:
                base, dels, asg = solve_right_deletions(W)
                R[ctx][u] = w + base
                for o, i in targets[1:]:
                    R[o][u] = w + dels[i]
                st[N_DERIVED] += len(targets) - 1
                st[WORK] += sum(s ** 3 + s * t for j in asg.row_mate if j >= 0)
            else:
                R[ctx][u] = w + mwm_weight_rows(W)
        for o, _ in targets:
            fill[o] = 1

    RTR[...] = np.array(R, dtype=np.float64).reshape(RTR.shape)
    SK[...] = np.array(S, dtype=np.float64).reshape(SK.shape)
    filled[...] = np.array(fill, dtype=filled.dtype)
    solves[...] = np.array(sol, dtype=solves.dtype).reshape(solves.shape)
    stats[...] = st


def mwm_weight_rows(W: list[list[float]]) -> float:
    if len(W) <= len(W[0]):
        return SaturatingAssignment(W).weight
    return SaturatingAssignment([list(col) for col in zip(*W)]).weight
