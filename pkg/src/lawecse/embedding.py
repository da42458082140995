from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

NEG_INF = -math.inf


@dataclass(frozen=True)
class Embedding:
    """A common subtree embedding: mapped vertex pairs and their total weight.

    ``pairs`` holds ``(T id, T' id)`` tuples with the topmost pair first.
    ``skipped`` lists inner vertices of topological paths as ``(tree, id)``
    with ``tree`` 1 for T and 2 for T'. An embedding with weight ``-inf`` and
    no pairs marks an infeasible instance.
    """

    pairs: tuple[tuple[str, str], ...]
    weight: float
    roots: Optional[tuple[str, str]] = None
    skipped: tuple[tuple[int, str], ...] = ()
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def feasible(self) -> bool:
        return self.weight != NEG_INF and bool(self.pairs)

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)

    @classmethod
    def infeasible(cls, stats=None) -> "Embedding":
        return cls((), NEG_INF, None, (), dict(stats or {}))

    def __len__(self) -> int:
        return len(self.pairs)
