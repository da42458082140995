"""Brute-force ground truth for small instances.

Nothing here touches the DP tables. Validity is checked literally on explicit
paths, weights are recomputed from scratch, and the optimum is found by
exhaustive extension of partial maps that prunes on validity only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .embedding import Embedding
from .trees import LabeledTree, RootedView, root_at
from .weights import WeightScheme

NEG_INF = -math.inf
DEFAULT_CAP = 8
MODES = ("rooted", "root_to_root", "unrooted")


class OracleError(ValueError):
    pass


@dataclass
class Check:
    """Outcome of a validity check; truthy iff the embedding is valid."""

    valid: bool
    reason: str = ""
    roots: Optional[tuple[str, str]] = None
    # S-edges as (T parent, T child) ids; filled when valid
    s_edges: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


class _Rooted:
    """Ancestor walks on a rooted view, all by explicit parent chasing."""

    def __init__(self, view: RootedView):
        self.view = view
        self.parent = view.parent
        self.root = view.root

    def path_up(self, top: int, bottom: int) -> Optional[list[int]]:
        """Vertices from ``bottom`` up to ``top`` inclusive, or None if not an ancestor."""
        path = [bottom]
        x = bottom
        while x != top:
            if x == self.root:
                return None
            x = self.parent[x]
            path.append(x)
        return path

    def nearest_marked_ancestor(self, x: int, marked) -> Optional[int]:
        while x != self.root:
            x = self.parent[x]
            if x in marked:
                return x
        return None


def _indices(T: LabeledTree, T2: LabeledTree, pairs) -> Optional[list[tuple[int, int]]]:
    try:
        return [(T.index[a], T2.index[b]) for a, b in pairs]
    except KeyError:
        return None


def _check_rooted(R1: _Rooted, R2: _Rooted, ipairs) -> tuple[bool, str, list]:
    phi = dict(ipairs)
    A = set(phi)
    B = set(phi.values())
    parent_s = {}
    tops = []
    for a in A:
        pa = R1.nearest_marked_ancestor(a, A)
        if pa is None:
            tops.append(a)
        else:
            parent_s[a] = pa
    if len(tops) != 1:
        return False, f"mapped T-vertices have {len(tops)} topmost elements", []
    # the T'-side structure must induce the same tree S
    inv = {b: a for a, b in phi.items()}
    for a in A:
        pb = R2.nearest_marked_ancestor(phi[a], B)
        if (inv[pb] if pb is not None else None) != parent_s.get(a):
            return False, "ancestry of mapped vertices differs between the trees", []
    children: dict[int, list[int]] = {}
    for b, a in parent_s.items():
        children.setdefault(a, []).append(b)
    for R, f, side in ((R1, lambda x: x, "T"), (R2, phi.get, "T'")):
        for a, kids in children.items():
            paths = []
            for b in kids:
                path = R.path_up(f(a), f(b))
                if path is None:
                    return False, f"condition i) fails in {side}: image of child not below image of parent", []
                paths.append(set(path))
            for i in range(len(paths)):
                for j in range(i + 1, len(paths)):
                    if paths[i] & paths[j] != {f(a)}:
                        return False, f"condition ii) fails in {side}: sibling paths overlap", []
    return True, "", sorted(parent_s.items())


def is_valid_embedding(T: LabeledTree, T2: LabeledTree, emb, roots=None) -> Check:
    """Check an embedding (or a sequence of id pairs) against the definition.

    With ``roots=(r, s)`` both trees are rooted there; otherwise the check
    succeeds if some root pair works, and it suffices to try the mapped pairs.
    """
    pairs = list(emb.pairs if isinstance(emb, Embedding) else emb)
    if not pairs:
        return Check(False, "empty mapping")
    ipairs = _indices(T, T2, pairs)
    if ipairs is None:
        return Check(False, "pair references an unknown vertex")
    if len({a for a, _ in ipairs}) != len(ipairs) or len({b for _, b in ipairs}) != len(ipairs):
        return Check(False, "mapping is not injective")
    candidates = [roots] if roots is not None else pairs
    reason = ""
    for r, s in candidates:
        R1, R2 = _Rooted(root_at(T, r)), _Rooted(root_at(T2, s))
        ok, reason, s_edges = _check_rooted(R1, R2, ipairs)
        if ok:
            edges = [(T.ids[a], T.ids[b]) for b, a in s_edges]
            return Check(True, "", (r, s), edges)
    return Check(False, reason)


def _path_weight(scheme: WeightScheme, k: int, l: int, e1: str, e2: str) -> float:
    if k == 1 and l == 1:
        return scheme.edge_weight(e1, e2)
    inner = k + l - 2
    return -scheme.penalty * inner if inner else 0.0


def weight_of_embedding(T: LabeledTree, T2: LabeledTree, emb, scheme: WeightScheme,
                        roots=None) -> float:
    """Vertex pair weights plus one path weight per edge of the common subtree."""
    check = is_valid_embedding(T, T2, emb, roots)
    if not check:
        raise ValueError(f"invalid embedding: {check.reason}")
    pairs = dict(emb.pairs if isinstance(emb, Embedding) else emb)
    R1 = _Rooted(root_at(T, check.roots[0]))
    R2 = _Rooted(root_at(T2, check.roots[1]))
    total = 0.0
    for a, b in pairs.items():
        total += scheme.vertex_weight(T.labels[T.index[a]], T2.labels[T2.index[b]])
    for pa, a in check.s_edges:
        p1 = R1.path_up(T.index[pa], T.index[a])
        p2 = R2.path_up(T2.index[pairs[pa]], T2.index[pairs[a]])
        k, l = len(p1) - 1, len(p2) - 1
        e1 = T.edge_label(p1[0], p1[1])
        e2 = T2.edge_label(p2[0], p2[1])
        total += _path_weight(scheme, k, l, e1, e2)
    return total


def skipped_vertices(T: LabeledTree, T2: LabeledTree, emb, roots=None) -> list[tuple[int, str]]:
    """Inner vertices of all topological paths, as ``(tree, id)``."""
    check = is_valid_embedding(T, T2, emb, roots)
    if not check:
        raise ValueError(f"invalid embedding: {check.reason}")
    pairs = dict(emb.pairs if isinstance(emb, Embedding) else emb)
    R1 = _Rooted(root_at(T, check.roots[0]))
    R2 = _Rooted(root_at(T2, check.roots[1]))
    out = []
    for pa, a in check.s_edges:
        p1 = R1.path_up(T.index[pa], T.index[a])
        p2 = R2.path_up(T2.index[pairs[pa]], T2.index[pairs[a]])
        out += [(1, T.ids[x]) for x in p1[1:-1]]
        out += [(2, T2.ids[x]) for x in p2[1:-1]]
    return sorted(out)


class _Enumerator:
    """All valid embeddings under fixed roots, by extension in T-preorder."""

    def __init__(self, view1: RootedView, view2: RootedView, scheme: WeightScheme,
                 root_to_root: bool):
        self.v1, self.v2 = view1, view2
        self.T, self.T2 = view1.tree, view2.tree
        self.scheme = scheme
        self.r2r = root_to_root
        n1, n2 = len(self.T), len(self.T2)
        self.anc1 = self._ancestry(view1)
        self.anc2 = self._ancestry(view2)
        self.vw = [[scheme.vertex_weight(self.T.labels[a], self.T2.labels[b]) for b in range(n2)]
                   for a in range(n1)]
        self.phi = [-1] * n1
        self.used = [False] * n2
        self.best = NEG_INF
        self.best_pairs: Optional[list] = None
        self.count = 0

    @staticmethod
    def _ancestry(view: RootedView):
        """``anc[x]`` lists the proper ancestors of ``x``, nearest first."""
        out = []
        for x in range(len(view.tree)):
            chain = []
            while x != view.root:
                x = view.parent[x]
                chain.append(x)
            out.append(chain)
        return out

    def _step(self, anc, top: int, x: int) -> int:
        """Child of ``top`` on the path down to its descendant ``x``."""
        chain = [x] + anc[x]
        return chain[chain.index(top) - 1]

    def _dist(self, anc, top: int, x: int) -> int:
        return anc[x].index(top) + 1

    def _path_weight(self, pa: int, a: int, b: int) -> float:
        k = self._dist(self.anc1, pa, a)
        l = self._dist(self.anc2, self.phi[pa], b)
        e1 = e2 = ""
        if k == 1 and l == 1:
            e1 = self.T.edge_label(pa, a)
            e2 = self.T2.edge_label(self.phi[pa], b)
        return _path_weight(self.scheme, k, l, e1, e2)

    def run(self):
        self._extend(0, 0.0, 0)
        return self.best, self.best_pairs

    def _record(self, weight: float):
        self.count += 1
        if self.best_pairs is None or weight > self.best:
            self.best = weight
            self.best_pairs = [(a, b) for a, b in enumerate(self.phi) if b >= 0]

    def _mapped_parent(self, a: int) -> Optional[int]:
        return next((x for x in self.anc1[a] if self.phi[x] >= 0), None)

    def _candidates(self, a: int, n_mapped: int):
        if n_mapped == 0:
            if self.r2r:
                if a == self.v1.root:
                    yield None, self.v2.root
                return
            for b in range(len(self.T2)):
                yield None, b
            return
        pa = self._mapped_parent(a)
        if pa is None:
            return
        fa = self.phi[pa]
        siblings = [c for c, fc in enumerate(self.phi) if fc >= 0 and self._mapped_parent(c) == pa]
        step_a = self._step(self.anc1, pa, a)
        if any(self._step(self.anc1, pa, c) == step_a for c in siblings):
            return
        for b in range(len(self.T2)):
            if self.used[b] or fa not in self.anc2[b]:
                continue
            if next(x for x in self.anc2[b] if self.used[x]) != fa:
                continue
            if any(self.used[x] and b in self.anc2[x] for x in range(len(self.T2))):
                continue
            step_b = self._step(self.anc2, fa, b)
            if any(self._step(self.anc2, fa, self.phi[c]) == step_b for c in siblings):
                continue
            yield pa, b

    def _extend(self, i: int, weight: float, n_mapped: int):
        if i == len(self.v1.preorder):
            if n_mapped:
                self._record(weight)
            return
        a = self.v1.preorder[i]
        if not (self.r2r and n_mapped == 0 and a == self.v1.root):
            self._extend(i + 1, weight, n_mapped)
        for pa, b in list(self._candidates(a, n_mapped)):
            w = weight + self.vw[a][b]
            self.phi[a] = b
            self.used[b] = True
            if pa is not None:
                w += self._path_weight(pa, a, b)
            self._extend(i + 1, w, n_mapped + 1)
            self.phi[a] = -1
            self.used[b] = False


def enumerate_embeddings(T: LabeledTree, T2: LabeledTree, roots, scheme: WeightScheme,
                         root_to_root: bool = False):
    """Every valid embedding under ``roots`` as ``(pairs, weight)``; for tests."""
    out = []
    en = _Enumerator(root_at(T, roots[0]), root_at(T2, roots[1]), scheme, root_to_root)

    def record(weight, en=en):
        en.count += 1
        out.append(([(T.ids[a], T2.ids[b]) for a, b in enumerate(en.phi) if b >= 0], weight))

    en._record = record
    en.run()
    return out


def _to_embedding(T, T2, ipairs, weight, roots) -> Embedding:
    pairs = tuple((T.ids[a], T2.ids[b]) for a, b in ipairs)
    skipped = tuple(skipped_vertices(T, T2, pairs, roots))
    top = pairs[0]
    return Embedding(pairs, float(weight), top, skipped)


def oracle_best(T: LabeledTree, T2: LabeledTree, scheme: WeightScheme, mode: str = "unrooted",
                roots=None, cap: int = DEFAULT_CAP) -> tuple[float, Embedding]:
    """Exhaustive optimum for ``mode`` in ``MODES``.

    ``rooted`` and ``root_to_root`` need ``roots=(r, s)``; ``unrooted`` takes
    the best root-to-root embedding over all root pairs.
    """
    if mode not in MODES:
        raise OracleError(f"unknown mode {mode!r}")
    if len(T) > cap or len(T2) > cap:
        raise OracleError(f"oracle size cap {cap} exceeded ({len(T)}, {len(T2)})")
    if mode == "unrooted":
        jobs = [(r, s) for r in T.ids for s in T2.ids]
    else:
        if roots is None:
            raise OracleError(f"mode {mode} needs roots")
        jobs = [tuple(roots)]
    best, best_emb = NEG_INF, None
    for r, s in jobs:
        en = _Enumerator(root_at(T, r), root_at(T2, s), scheme, mode != "rooted")
        w, ipairs = en.run()
        if ipairs is not None and (best_emb is None or w > best):
            # pairs are in T-preorder, so the first one is the top
            best, best_emb = w, (ipairs, (r, s))
    if best_emb is None or best == NEG_INF:
        return NEG_INF, Embedding.infeasible()
    return best, _to_embedding(T, T2, best_emb[0], best, best_emb[1])


def mcs_brute_force(T: LabeledTree, T2: LabeledTree, scheme: WeightScheme) -> float:
    """Best weight of an isomorphism between connected subtrees, edges onto edges.

    Independent of embeddings: grows partial isomorphisms one adjacent pair at
    a time and scores vertex pairs plus mapped edge pairs.
    """
    n1, n2 = len(T), len(T2)
    vw = [[scheme.vertex_weight(T.labels[a], T2.labels[b]) for b in range(n2)] for a in range(n1)]
    seen: set = set()
    best = NEG_INF

    def grow(phi: dict, weight: float):
        nonlocal best
        key = frozenset(phi.items())
        if key in seen:
            return
        seen.add(key)
        best = max(best, weight)
        used = set(phi.values())
        for a, b in list(phi.items()):
            for x in T.adjacency[a]:
                if x in phi:
                    continue
                for y in T2.adjacency[b]:
                    if y in used or vw[x][y] == NEG_INF:
                        continue
                    phi[x] = y
                    grow(phi, weight + vw[x][y]
                         + scheme.edge_weight(T.edge_label(a, x), T2.edge_label(b, y)))
                    del phi[x]

    for a in range(n1):
        for b in range(n2):
            if vw[a][b] != NEG_INF:
                grow({a: b}, vw[a][b])
    return best
