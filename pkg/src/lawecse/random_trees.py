"""Seeded random trees and weight schemes for tests and benchmarks."""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .trees import LabeledTree, tree_from_edges
from .weights import WeightScheme

ALPHABET = ("A", "B", "C")


def rng_for(seed, *keys) -> random.Random:
    """Independent stream per ``(seed, *keys)``; stable across runs and platforms."""
    return random.Random(":".join(str(k) for k in (seed,) + keys))


def random_tree(n: int, rng: random.Random, max_degree: Optional[int] = None,
                labels: Sequence[str] = ALPHABET, edge_labels: Sequence[str] = ("-",),
                prefix: str = "x") -> LabeledTree:
    """Uniform attachment: vertex ``i`` hangs below a random earlier vertex of free degree."""
    if n < 1:
        raise ValueError("tree needs at least one vertex")
    if max_degree is not None and max_degree < 2 and n > 2:
        raise ValueError("max_degree must be >= 2 for trees with more than 2 vertices")
    degree = [0] * n
    open_ = [0]
    edges = []
    for i in range(1, n):
        j = rng.randrange(len(open_))
        p = open_[j]
        edges.append((p, i))
        degree[p] += 1
        degree[i] = 1
        if max_degree is not None and degree[p] >= max_degree:
            open_[j] = open_[-1]
            open_.pop()
        if max_degree is None or max_degree > 1:
            open_.append(i)
    vlabels = [rng.choice(labels) for _ in range(n)]
    elabels = [rng.choice(edge_labels) for _ in edges]
    return tree_from_edges(vlabels, edges, elabels, prefix)


def random_scheme(rng: random.Random, vertex_labels: Sequence[str] = ALPHABET,
                  edge_labels: Sequence[str] = ("-",), low: float = -2.0, high: float = 2.0,
                  neg_inf_rate: float = 0.1, penalty: float = 0.3) -> WeightScheme:
    """Every ordered label pair gets a uniform weight, or ``-inf`` with ``neg_inf_rate``."""

    def draw():
        return -math.inf if rng.random() < neg_inf_rate else rng.uniform(low, high)

    vpairs = {(a, b): draw() for a in vertex_labels for b in vertex_labels}
    epairs = {(a, b): draw() for a in edge_labels for b in edge_labels}
    return WeightScheme(vertex_pairs=vpairs, edge_pairs=epairs, penalty=penalty)


def label_match_scheme(labels: Sequence[str] = ALPHABET, penalty: float = math.inf) -> WeightScheme:
    """Equal labels score 1, distinct labels are forbidden, edges score 0."""
    return WeightScheme(vertex_pairs={(a, a): 1.0 for a in labels}, penalty=penalty)
