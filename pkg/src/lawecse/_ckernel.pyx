# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled table-filling kernel.

Mirrors ``_pykernel`` statement for statement (same floating-point operation
order), so both backends produce bitwise identical tables.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport INFINITY
from libc.stdint cimport int64_t

import numpy as np

cdef double INF = INFINITY
cdef double NEG = -INFINITY

cdef enum:
    N_SOLVES = 0
    N_DERIVED = 1
    N_ENTRIES = 2
    WORK = 3


cdef struct Work:
    # Hungarian state, sized for cap_m columns and cap_s rows
    double* pu
    double* pv
    double* minv
    int* owner
    int* way
    char* used
    int* row_mate
    int* col_mate
    # deletion search
    double* end_gain
    double* gain
    double* held
    # matrices
    double* W
    double* Wt
    double* dels


cdef int work_alloc(Work* w, int cap_s, int cap_t) except -1:
    cdef int cap_m = cap_s + cap_t + 2
    cdef int cap_cells = (cap_s + 1) * (cap_t + 1)
    w.pu = <double*> malloc((cap_s + 2) * sizeof(double))
    w.pv = <double*> malloc(cap_m * sizeof(double))
    w.minv = <double*> malloc(cap_m * sizeof(double))
    w.owner = <int*> malloc(cap_m * sizeof(int))
    w.way = <int*> malloc(cap_m * sizeof(int))
    w.used = <char*> malloc(cap_m * sizeof(char))
    w.row_mate = <int*> malloc((cap_s + 2) * sizeof(int))
    w.col_mate = <int*> malloc(cap_m * sizeof(int))
    w.end_gain = <double*> malloc((cap_s + 2) * sizeof(double))
    w.gain = <double*> malloc((cap_s + 2) * sizeof(double))
    w.held = <double*> malloc((cap_s + 2) * sizeof(double))
    w.W = <double*> malloc(cap_cells * sizeof(double))
    w.Wt = <double*> malloc(cap_cells * sizeof(double))
    w.dels = <double*> malloc(cap_m * sizeof(double))
    if (not w.pu or not w.pv or not w.minv or not w.owner or not w.way or not w.used
            or not w.row_mate or not w.col_mate or not w.end_gain or not w.gain
            or not w.held or not w.W or not w.Wt or not w.dels):
        work_free(w)
        raise MemoryError()
    return 0


cdef void work_free(Work* w):
    free(w.pu); free(w.pv); free(w.minv); free(w.owner); free(w.way); free(w.used)
    free(w.row_mate); free(w.col_mate); free(w.end_gain); free(w.gain); free(w.held)
    free(w.W); free(w.Wt); free(w.dels)


cdef inline bint usable(double x) nogil:
    return x >= 0.0


cdef double hungarian(double* W, int s, int t, Work* w) nogil:
    """Saturating assignment of the s rows of W (s <= t) into t columns + copies."""
    cdef int m = t + s
    cdef int i, j, j0, j1, i0
    cdef double delta, cur, c, x, total
    for j in range(m + 1):
        w.owner[j] = 0
        w.pv[j] = 0.0
        w.way[j] = 0
    for i in range(s + 1):
        w.pu[i] = 0.0
    for i in range(1, s + 1):
        w.owner[0] = i
        j0 = 0
        for j in range(m + 1):
            w.minv[j] = INF
            w.used[j] = 0
        while True:
            w.used[j0] = 1
            i0 = w.owner[j0]
            delta = INF
            j1 = -1
            for j in range(1, m + 1):
                if w.used[j]:
                    continue
                if j <= t:
                    x = W[(i0 - 1) * t + j - 1]
                    c = -x if usable(x) else INF
                else:
                    c = 0.0 if j - t == i0 else INF
                cur = c - w.pu[i0] - w.pv[j]
                if cur < w.minv[j]:
                    w.minv[j] = cur
                    w.way[j] = j0
                if w.minv[j] < delta:
                    delta = w.minv[j]
                    j1 = j
            for j in range(m + 1):
                if w.used[j]:
                    w.pu[w.owner[j]] += delta
                    w.pv[j] -= delta
                else:
                    w.minv[j] -= delta
            j0 = j1
            if w.owner[j0] == 0:
                break
        while j0:
            j1 = w.way[j0]
            w.owner[j0] = w.owner[j1]
            j0 = j1
    for i in range(s):
        w.row_mate[i] = -1
    for j in range(t):
        w.col_mate[j] = -1
    for j in range(1, t + 1):
        if w.owner[j]:
            w.row_mate[w.owner[j] - 1] = j - 1
            w.col_mate[j - 1] = w.owner[j] - 1
    total = 0.0
    for i in range(s):
        if w.row_mate[i] >= 0:
            total += W[i * t + w.row_mate[i]]
    return total


cdef double delete_col(double* W, int s, int t, double base, int c, Work* w) nogil:
    cdef int u0 = w.col_mate[c]
    cdef int i, j, k, it
    cdef double gi, cand, best, x
    cdef bint changed
    if u0 < 0:
        return base
    for i in range(s):
        w.end_gain[i] = 0.0
        for j in range(t):
            x = W[i * t + j]
            if w.col_mate[j] < 0 and usable(x) and x > w.end_gain[i]:
                w.end_gain[i] = x
        w.gain[i] = NEG
    w.gain[u0] = 0.0
    for it in range(s):
        changed = False
        for i in range(s):
            gi = w.gain[i]
            if gi == NEG:
                continue
            for k in range(s):
                j = w.row_mate[k]
                if k == i or k == u0 or j < 0 or not usable(W[i * t + j]):
                    continue
                cand = gi + W[i * t + j] - W[k * t + j]
                if cand > w.gain[k]:
                    w.gain[k] = cand
                    changed = True
        if not changed:
            break
    best = NEG
    for i in range(s):
        if w.gain[i] != NEG and w.gain[i] + w.end_gain[i] > best:
            best = w.gain[i] + w.end_gain[i]
    return base - W[u0 * t + c] + best


cdef double delete_row(double* W, int s, int t, double base, int c, Work* w) nogil:
    cdef int v0 = w.row_mate[c]
    cdef int k, k2, j, it
    cdef double cand, best
    cdef bint changed
    if v0 < 0:
        return base
    for k in range(s):
        j = w.row_mate[k]
        w.held[k] = W[k * t + j] if j >= 0 else 0.0
        w.gain[k] = NEG
    for k in range(s):
        if k != c and usable(W[k * t + v0]):
            w.gain[k] = W[k * t + v0] - w.held[k]
    for it in range(s):
        changed = False
        for k in range(s):
            j = w.row_mate[k]
            if k == c or w.gain[k] == NEG or j < 0:
                continue
            for k2 in range(s):
                if k2 == c or k2 == k or not usable(W[k2 * t + j]):
                    continue
                cand = w.gain[k] + W[k2 * t + j] - w.held[k2]
                if cand > w.gain[k2]:
                    w.gain[k2] = cand
                    changed = True
        if not changed:
            break
    best = 0.0
    for k in range(s):
        if w.gain[k] > best:
            best = w.gain[k]
    return base - W[c * t + v0] + best


cdef double solve_km(Work* w, int k, int l) nogil:
    """MWM weight of the k x l matrix in w.W (row-major)."""
    cdef int i, j
    if k <= l:
        return hungarian(w.W, k, l, w)
    for i in range(k):
        for j in range(l):
            w.Wt[j * k + i] = w.W[i * l + j]
    return hungarian(w.Wt, l, k, w)


cdef double solve_km_deletions(Work* w, int k, int l, long long* work) nogil:
    """MWM weight of w.W plus w.dels[c] for every column c deleted."""
    cdef int i, j, c, s, t, matched
    cdef double base
    cdef double* M
    if k <= l:
        M = w.W
        s = k
        t = l
    else:
        for i in range(k):
            for j in range(l):
                w.Wt[j * k + i] = w.W[i * l + j]
        M = w.Wt
        s = l
        t = k
    base = hungarian(M, s, t, w)
    matched = 0
    for i in range(s):
        if w.row_mate[i] >= 0:
            matched += 1
    work[0] += matched * (s * s * s + s * t)
    for c in range(l):
        if k <= l:
            w.dels[c] = delete_col(M, s, t, base, c, w)
        else:
            w.dels[c] = delete_row(M, s, t, base, c, w)
    return base


def run_plan(plan, ts, wa, double[:, ::1] R, double[:, ::1] S,
             unsigned char[::1] filled, int[:, ::1] solves, int64_t[::1] stats):
    """Execute ``plan`` in place on the ``(n_ctx, |T|)`` tables ``R`` / ``S``."""
    cdef int64_t[::1] kind = plan.kind
    cdef int64_t[::1] vert = plan.vertex
    cdef int64_t[::1] pctx = plan.ctx
    cdef int64_t[::1] seg = plan.seg
    cdef int64_t[::1] nb_ctx = plan.nb_ctx
    cdef int64_t[::1] nb_elab = plan.nb_elab
    cdef int64_t[::1] out_ctx = plan.out_ctx
    cdef int64_t[::1] post = ts.post
    cdef int64_t[::1] cptr = ts.child_ptr
    cdef int64_t[::1] cidx = ts.child
    cdef int64_t[::1] elab = ts.elab
    cdef int64_t[::1] vlab = ts.vlab
    cdef double[:, ::1] VW = wa.vw
    cdef double[:, ::1] EW = wa.ew
    cdef int64_t[::1] vlab2 = wa.vlab2
    cdef double p = wa.penalty
    cdef bint can_skip = p != INF

    cdef Py_ssize_t nsteps = kind.shape[0]
    cdef Py_ssize_t n1 = post.shape[0]
    cdef Py_ssize_t step, pi, a, b, q, ci
    cdef long long v, ctx, u, cc, o, c
    cdef int k, l, i, j, s, t, best_index, n_targets
    cdef double wv, best, second, x, y, base
    cdef bint main_step
    cdef long long work = 0
    cdef int max_k = 0, max_l = 0
    cdef Work w

    for pi in range(n1):
        u = post[pi]
        if cptr[u + 1] - cptr[u] > max_k:
            max_k = <int>(cptr[u + 1] - cptr[u])
    for step in range(nsteps):
        if seg[step + 1] - seg[step] > max_l:
            max_l = <int>(seg[step + 1] - seg[step])
    work_alloc(&w, max_k + max_l, max_k + max_l)
    try:
        with nogil:
            for step in range(nsteps):
                main_step = kind[step] == 1
                v = vert[step]
                ctx = pctx[step]
                a = seg[step]
                b = seg[step + 1]
                l = <int>(b - a)
                n_targets = 1
                if main_step:
                    for q in range(a, b):
                        if not filled[out_ctx[q]]:
                            n_targets += 1
                for pi in range(n1):
                    u = post[pi]
                    k = <int>(cptr[u + 1] - cptr[u])
                    # skipped entries
                    if can_skip:
                        if main_step:
                            best = NEG
                            second = NEG
                            best_index = -1
                            for q in range(a, b):
                                cc = nb_ctx[q]
                                x = R[cc, u]
                                y = S[cc, u]
                                if y > x:
                                    x = y
                                if x > best:
                                    second = best
                                    best = x
                                    best_index = <int>(q - a)
                                elif x > second:
                                    second = x
                            # ROOT target sees every neighbor
                            x = best
                            for ci in range(cptr[u], cptr[u + 1]):
                                c = cidx[ci]
                                if R[ctx, c] > x:
                                    x = R[ctx, c]
                                if S[ctx, c] > x:
                                    x = S[ctx, c]
                            S[ctx, u] = x - p
                            for q in range(a, b):
                                o = out_ctx[q]
                                if filled[o]:
                                    continue
                                x = second if q - a == best_index else best
                                for ci in range(cptr[u], cptr[u + 1]):
                                    c = cidx[ci]
                                    if R[o, c] > x:
                                        x = R[o, c]
                                    if S[o, c] > x:
                                        x = S[o, c]
                                S[o, u] = x - p
                        else:
                            x = NEG
                            for q in range(a, b):
                                cc = nb_ctx[q]
                                if R[cc, u] > x:
                                    x = R[cc, u]
                                if S[cc, u] > x:
                                    x = S[cc, u]
                            for ci in range(cptr[u], cptr[u + 1]):
                                c = cidx[ci]
                                if R[ctx, c] > x:
                                    x = R[ctx, c]
                                if S[ctx, c] > x:
                                    x = S[ctx, c]
                            S[ctx, u] = x - p
                    else:
                        S[ctx, u] = NEG
                        if main_step:
                            for q in range(a, b):
                                if not filled[out_ctx[q]]:
                                    S[out_ctx[q], u] = NEG
                    stats[N_ENTRIES] += 2 * n_targets
                    # root-to-root entries
                    wv = VW[vlab[u], vlab2[v]]
                    if wv == NEG or k == 0 or l == 0:
                        R[ctx, u] = wv
                        if main_step:
                            for q in range(a, b):
                                if not filled[out_ctx[q]]:
                                    R[out_ctx[q], u] = wv
                        continue
                    for i in range(k):
                        c = cidx[cptr[u] + i]
                        for j in range(l):
                            cc = nb_ctx[a + j]
                            x = S[cc, c]
                            y = R[cc, c] + EW[elab[c], nb_elab[a + j]]
                            w.W[i * l + j] = y if y > x else x
                    s = k if k < l else l
                    t = l if k < l else k
                    work += k * l + s * s * (t + s)
                    solves[u, v] += 1
                    stats[N_SOLVES] += 1
                    if main_step:
                        base = solve_km_deletions(&w, k, l, &work)
                        R[ctx, u] = wv + base
                        for q in range(a, b):
                            o = out_ctx[q]
                            if not filled[o]:
                                R[o, u] = wv + w.dels[q - a]
                        stats[N_DERIVED] += n_targets - 1
                    else:
                        R[ctx, u] = wv + solve_km(&w, k, l)
                filled[ctx] = 1
                if main_step:
                    for q in range(a, b):
                        filled[out_ctx[q]] = 1
    finally:
        work_free(&w)
    stats[WORK] += work


def mwm_weight(W):
    """MWM weight of a dense matrix (testing hook for the compiled solver)."""
    cdef double[:, ::1] M = np.ascontiguousarray(W, dtype=np.float64)
    cdef int k = M.shape[0], l = M.shape[1]
    cdef int i, j
    cdef double out
    cdef Work w
    if k == 0 or l == 0:
        return 0.0
    work_alloc(&w, k + l, k + l)
    try:
        for i in range(k):
            for j in range(l):
                w.W[i * l + j] = M[i, j]
        out = solve_km(&w, k, l)
    finally:
        work_free(&w)
    return out


def mwm_right_deletions(W):
    """Base MWM weight and the weight with each column deleted (testing hook)."""
    cdef double[:, ::1] M = np.ascontiguousarray(W, dtype=np.float64)
    cdef int k = M.shape[0], l = M.shape[1]
    cdef int i, j
    cdef double base
    cdef long long work = 0
    cdef Work w
    if k == 0 or l == 0:
        return 0.0, np.zeros(l)
    work_alloc(&w, k + l, k + l)
    try:
        for i in range(k):
            for j in range(l):
                w.W[i * l + j] = M[i, j]
        base = solve_km_deletions(&w, k, l, &work)
        dels = np.array([w.dels[j] for j in range(l)])
    finally:
        work_free(&w)
    return base, dels
