"""Maximum-weight matchings on small dense bipartite graphs.

A matching instance is a dense ``s' x t'`` weight matrix; ``-inf`` marks an
absent edge. Matchings of any cardinality are allowed, so the optimum is
never negative. Negative edges can never improve a matching and are dropped
before solving.

The solver works on the smaller side ``U`` (rows after an optional
transpose). Every row ``i`` gets a private copy column joined by a weight-0
edge, which turns "maximum weight matching" into "maximum weight matching
that saturates ``U``"; that one is found by successive shortest augmenting
paths with potentials (Hungarian method), in ``O(s^2 t)``.

Starting from such a saturating optimum, the optimum after deleting any one
vertex is a single best alternating path away (an augmenting path from the
ex-partner when the deleted vertex is on the large side, an even alternating
path when it is on the small side). Both are found with Bellman-Ford on the
row graph, since the residual costs are not sign-restricted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Union

import numpy as np

NEG_INF = -math.inf
_INF = math.inf


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Matching:
    """Matched ``(left, right)`` index pairs, sorted by left index."""

    pairs: tuple[tuple[int, int], ...]
    weight: float

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class DeletionResult:
    weight: float
    pairs: Optional[tuple[tuple[int, int], ...]] = None


@dataclass(frozen=True)
class DeletionFamily:
    base: Matching
    side: Side
    per_deleted: dict[int, DeletionResult]


Weights = Union[np.ndarray, Sequence[Sequence[float]]]


def _as_rows(weights: Weights) -> list[list[float]]:
    arr = np.asarray(weights, dtype=np.float64)
    if arr.ndim != 2:
        if arr.size == 0:
            return []
        raise ValueError(f"expected a 2-d weight matrix, got shape {arr.shape}")
    if np.isnan(arr).any():
        raise ValueError("NaN in weight matrix")
    if (arr == _INF).any():
        raise ValueError("+inf edge weight")
    return arr.tolist()


def _usable(w: float) -> bool:
    # -inf fails this test too
    return w >= 0.0


class SaturatingAssignment:
    """Optimal matching of the rows of ``W`` (``s <= t``) into columns plus copies.

    ``row_mate[i]`` is the matched column of row ``i`` or ``-1`` when the row
    sits on its zero-weight copy (i.e. is unmatched in the original graph).
    """

    def __init__(self, W: list[list[float]]):
        self.W = W
        self.s = s = len(W)
        self.t = t = len(W[0]) if s else 0
        if s > t:
            raise ValueError("rows must form the smaller side")
        self.row_mate = self._hungarian()
        self.col_mate = [-1] * t
        for i, j in enumerate(self.row_mate):
            if j >= 0:
                self.col_mate[j] = i
        self.weight = sum(W[i][j] for i, j in enumerate(self.row_mate) if j >= 0)

    def _hungarian(self) -> list[int]:
        W, s, t = self.W, self.s, self.t
        m = t + s

        def cost(i, j):
            if j < t:
                w = W[i][j]
                return -w if _usable(w) else _INF
            return 0.0 if j - t == i else _INF

        # 1-based potentials/assignment; column 0 is the virtual start
        pu = [0.0] * (s + 1)
        pv = [0.0] * (m + 1)
        owner = [0] * (m + 1)
        way = [0] * (m + 1)
        for i in range(1, s + 1):
            owner[0] = i
            j0 = 0
            minv = [_INF] * (m + 1)
            used = [False] * (m + 1)
            while True:
                used[j0] = True
                i0 = owner[j0]
                delta = _INF
                j1 = -1
                for j in range(1, m + 1):
                    if used[j]:
                        continue
                    cur = cost(i0 - 1, j - 1) - pu[i0] - pv[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
                for j in range(m + 1):
                    if used[j]:
                        pu[owner[j]] += delta
                        pv[j] -= delta
                    else:
                        minv[j] -= delta
                j0 = j1
                if owner[j0] == 0:
                    break
            while j0:
                j1 = way[j0]
                owner[j0] = owner[j1]
                j0 = j1
        row_mate = [-1] * s
        for j in range(1, t + 1):
            if owner[j]:
                row_mate[owner[j] - 1] = j - 1
        return row_mate

    def pairs(self, row_mate=None) -> list[tuple[int, int]]:
        rm = self.row_mate if row_mate is None else row_mate
        return [(i, j) for i, j in enumerate(rm) if j >= 0]

    def delete_col(self, c: int, with_pairs: bool = False):
        """Optimum after deleting column ``c``; returns ``(weight, row_mate or None)``."""
        W, s, t = self.W, self.s, self.t
        rm = self.row_mate
        u0 = self.col_mate[c]
        if u0 < 0:
            return self.weight, (list(rm) if with_pairs else None)
        # best way to end a path at row i: its own copy (0) or a free column
        end_gain = [0.0] * s
        end_col = [-1] * s
        for i in range(s):
            row = W[i]
            for j in range(t):
                if self.col_mate[j] < 0 and _usable(row[j]) and row[j] > end_gain[i]:
                    end_gain[i] = row[j]
                    end_col[i] = j
        gain = [NEG_INF] * s
        pred = [-1] * s
        gain[u0] = 0.0
        for _ in range(s):
            changed = False
            for i in range(s):
                gi = gain[i]
                if gi == NEG_INF:
                    continue
                row = W[i]
                for k in range(s):
                    j = rm[k]
                    if k == i or k == u0 or j < 0 or not _usable(row[j]):
                        continue
                    cand = gi + row[j] - W[k][j]
                    if cand > gain[k]:
                        gain[k] = cand
                        pred[k] = i
                        changed = True
            if not changed:
                break
        best, end = NEG_INF, -1
        for i in range(s):
            if gain[i] != NEG_INF and gain[i] + end_gain[i] > best:
                best = gain[i] + end_gain[i]
                end = i
        weight = self.weight - W[u0][c] + best
        if not with_pairs:
            return weight, None
        new = list(rm)
        new[end] = end_col[end]
        k = end
        while k != u0:
            i = pred[k]
            # i takes over the column k held before the path
            new[i] = rm[k]
            k = i
        return weight, new

    def delete_row(self, c: int, with_pairs: bool = False):
        """Optimum after deleting row ``c``; returns ``(weight, row_mate or None)``."""
        W, s = self.W, self.s
        rm = self.row_mate
        v0 = rm[c]
        if v0 < 0:
            new = list(rm)
            new[c] = -1
            return self.weight, (new if with_pairs else None)

        def held(k):
            j = rm[k]
            return W[k][j] if j >= 0 else 0.0

        gain = [NEG_INF] * s
        pred = [-1] * s
        for k in range(s):
            if k != c and _usable(W[k][v0]):
                gain[k] = W[k][v0] - held(k)
        for _ in range(s):
            changed = False
            for k in range(s):
                j = rm[k]
                if k == c or gain[k] == NEG_INF or j < 0:
                    continue
                for k2 in range(s):
                    if k2 == c or k2 == k or not _usable(W[k2][j]):
                        continue
                    cand = gain[k] + W[k2][j] - held(k2)
                    if cand > gain[k2]:
                        gain[k2] = cand
                        pred[k2] = k
                        changed = True
            if not changed:
                break
        best, end = 0.0, -1
        for k in range(s):
            if gain[k] > best:
                best = gain[k]
                end = k
        weight = self.weight - W[c][v0] + best
        if not with_pairs:
            return weight, None
        new = list(rm)
        new[c] = -1
        k = end
        while k >= 0:
            i = pred[k]
            new[k] = v0 if i < 0 else rm[i]
            k = i
        return weight, new


def _solve_rows(rows: list[list[float]]):
    """Return ``(assignment, transposed)`` with the smaller side as rows."""
    s = len(rows)
    t = len(rows[0]) if s else 0
    if s <= t:
        return SaturatingAssignment(rows), False
    cols = [list(col) for col in zip(*rows)]
    return SaturatingAssignment(cols), True


def _orient(pairs, transposed: bool) -> tuple[tuple[int, int], ...]:
    if transposed:
        pairs = [(j, i) for i, j in pairs]
    return tuple(sorted(pairs))


def solve_mwm(weights: Weights) -> Matching:
    """Maximum-weight matching (any cardinality) of a dense bipartite instance."""
    rows = _as_rows(weights)
    if not rows or not rows[0]:
        return Matching((), 0.0)
    asg, tr = _solve_rows(rows)
    return Matching(_orient(asg.pairs(), tr), asg.weight)


def solve_all_deletions(
    weights: Weights, side: Union[Side, str], with_pairs: bool = False
) -> DeletionFamily:
    """MWM of the instance and of every instance with one ``side`` vertex removed.

    Only one from-scratch solve happens; each deletion is re-optimized by a
    single best alternating path from the deleted vertex's former partner.
    """
    side = Side(side)
    rows = _as_rows(weights)
    shape = np.shape(weights)
    # the shape survives an empty side, the row lists do not
    n_left, n_right = shape if len(shape) == 2 else (len(rows), 0)
    count = n_left if side is Side.LEFT else n_right
    if n_left == 0 or n_right == 0:
        empty = DeletionResult(0.0, () if with_pairs else None)
        return DeletionFamily(Matching((), 0.0), side, {c: empty for c in range(count)})
    asg, tr = _solve_rows(rows)
    base = Matching(_orient(asg.pairs(), tr), asg.weight)
    # deleting along the internal rows (small side) or columns (large side)
    on_rows = (side is Side.LEFT) != tr
    per = {}
    for c in range(count):
        w, rm = asg.delete_row(c, with_pairs) if on_rows else asg.delete_col(c, with_pairs)
        pairs = _orient(asg.pairs(rm), tr) if with_pairs else None
        per[c] = DeletionResult(w, pairs)
    return DeletionFamily(base, side, per)


def best_cardinality_two(col_v: Sequence[float], col_w: Sequence[float]) -> float:
    """Best ``col_v[b1] + col_w[b2]`` over distinct rows ``b1 != b2``.

    Only the two largest finite entries of each column can take part in an
    optimum, so at most four combinations are examined.
    """
    if len(col_v) != len(col_w):
        raise ValueError("columns must share the row set")
    top_v = _top_two(col_v)
    top_w = _top_two(col_w)
    best = NEG_INF
    for bv, xv in top_v:
        for bw, xw in top_w:
            if bv != bw and xv + xw > best:
                best = xv + xw
    return best


def _top_two(col: Sequence[float]) -> list[tuple[int, float]]:
    first = second = None
    for i, x in enumerate(col):
        if x == NEG_INF:
            continue
        if first is None or x > first[1]:
            first, second = (i, x), first
        elif second is None or x > second[1]:
            second = (i, x)
    return [e for e in (first, second) if e is not None]


def brute_force_mwm(weights: Weights) -> float:
    """Exhaustive maximum over all matchings; exponential, for testing only."""
    rows = _as_rows(weights)

    def rec(i: int, used: frozenset) -> float:
        if i == len(rows):
            return 0.0
        best = rec(i + 1, used)
        for j, w in enumerate(rows[i]):
            if j not in used and w != NEG_INF:
                best = max(best, w + rec(i + 1, used | {j}))
        return best

    return rec(0, frozenset())
