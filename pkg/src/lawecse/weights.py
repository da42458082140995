"""Label-pair weights and the distance penalty.

Weights file format::

    # comment
    vpair <a> <b> <w>     vertex label pair (T-side label, T'-side label)
    epair <a> <b> <w>     edge label pair
    vdefault <w>          weight of unlisted vertex pairs (default -inf)
    edefault <w>          weight of unlisted edge pairs (default 0)
    penalty <w>           cost per skipped vertex, >= 0 or inf (default 0)

``<w>`` is a decimal number, ``inf`` or ``-inf``. Pairs are ordered: no
symmetry is implied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

NEG_INF = -math.inf
POS_INF = math.inf


class WeightError(ValueError):
    def __init__(self, message: str, lineno: Optional[int] = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class WeightScheme:
    vertex_pairs: Mapping[tuple[str, str], float] = field(default_factory=dict)
    vertex_default: float = NEG_INF
    edge_pairs: Mapping[tuple[str, str], float] = field(default_factory=dict)
    edge_default: float = 0.0
    penalty: float = 0.0

    def __post_init__(self):
        p = self.penalty
        if math.isnan(p) or p < 0:
            raise WeightError(f"penalty must be >= 0 or inf, got {p}")
        for name in ("vertex_default", "edge_default"):
            _check_pair_weight(getattr(self, name), name)
        for table in (self.vertex_pairs, self.edge_pairs):
            for key, w in table.items():
                _check_pair_weight(w, f"pair {key}")

    @property
    def mcs_mode(self) -> bool:
        """True when skipping is forbidden (infinite penalty)."""
        return self.penalty == POS_INF

    def vertex_weight(self, a: str, b: str) -> float:
        return self.vertex_pairs.get((a, b), self.vertex_default)

    def edge_weight(self, a: str, b: str) -> float:
        return self.edge_pairs.get((a, b), self.edge_default)

    def vertex_matrix(self, labels1: Sequence[str], labels2: Sequence[str]) -> np.ndarray:
        return np.array(
            [[self.vertex_weight(a, b) for b in labels2] for a in labels1], dtype=np.float64
        ).reshape(len(labels1), len(labels2))

    def edge_matrix(self, labels1: Sequence[str], labels2: Sequence[str]) -> np.ndarray:
        return np.array(
            [[self.edge_weight(a, b) for b in labels2] for a in labels1], dtype=np.float64
        ).reshape(len(labels1), len(labels2))


def _check_pair_weight(w: float, what: str) -> None:
    if math.isnan(w):
        raise WeightError(f"{what}: NaN weight")
    if w == POS_INF:
        raise WeightError(f"{what}: +inf is only allowed as a penalty")


def vertex_weight(scheme: WeightScheme, a: str, b: str) -> float:
    return scheme.vertex_weight(a, b)


def edge_weight(scheme: WeightScheme, a: str, b: str) -> float:
    return scheme.edge_weight(a, b)


def parse_value(token: str) -> float:
    t = token.lower()
    if t in ("inf", "+inf", "infinity", "+infinity"):
        return POS_INF
    if t in ("-inf", "-infinity"):
        return NEG_INF
    if t in ("nan", "+nan", "-nan"):
        raise ValueError("NaN is not a weight")
    return float(token)


def parse_weights(text: str) -> WeightScheme:
    vpairs: dict[tuple[str, str], float] = {}
    epairs: dict[tuple[str, str], float] = {}
    scalars = {"vdefault": NEG_INF, "edefault": 0.0, "penalty": 0.0}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        key = parts[0]
        try:
            if key in ("vpair", "epair") and len(parts) == 4:
                w = parse_value(parts[3])
                _check_pair_weight(w, key)
                (vpairs if key == "vpair" else epairs)[(parts[1], parts[2])] = w
            elif key in scalars and len(parts) == 2:
                w = parse_value(parts[1])
                if key == "penalty":
                    if w < 0:
                        raise WeightError(f"negative penalty {parts[1]}")
                else:
                    _check_pair_weight(w, key)
                scalars[key] = w
            else:
                raise WeightError(f"malformed line {line!r}")
        except WeightError as exc:
            raise WeightError(str(exc), lineno) from None
        except ValueError:
            raise WeightError(f"bad weight in {line!r}", lineno) from None
    return WeightScheme(
        vertex_pairs=vpairs,
        vertex_default=scalars["vdefault"],
        edge_pairs=epairs,
        edge_default=scalars["edefault"],
        penalty=scalars["penalty"],
    )


def format_value(w: float) -> str:
    if w == POS_INF:
        return "inf"
    if w == NEG_INF:
        return "-inf"
    return repr(float(w))


def serialize_weights(scheme: WeightScheme) -> str:
    lines = [
        f"vdefault {format_value(scheme.vertex_default)}",
        f"edefault {format_value(scheme.edge_default)}",
        f"penalty {format_value(scheme.penalty)}",
    ]
    lines += [f"vpair {a} {b} {format_value(w)}" for (a, b), w in scheme.vertex_pairs.items()]
    lines += [f"epair {a} {b} {format_value(w)}" for (a, b), w in scheme.edge_pairs.items()]
    return "\n".join(lines) + "\n"


def read_weights(path) -> WeightScheme:
    with open(path, encoding="utf-8") as fh:
        return parse_weights(fh.read())
