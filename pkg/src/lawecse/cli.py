"""Command-line front end.

Solver subcommands print one JSON object and exit 0 (found), 2 (infeasible or
below ``--min-weight``) or 1 (bad input, reported on stderr). ``bench``
prints CSV.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from typing import Optional, Sequence

from ._backend import KERNELS
from .embedding import Embedding
from .matching import Side, solve_all_deletions, solve_mwm
from .oracle import OracleError, oracle_best
from .random_trees import random_scheme, random_tree, rng_for
from .rooted import lawecse_rooted, root_to_root
from .trees import LabeledTree, TreeError, read_tree, root_at
from .unrooted import lawecse_unrooted, naive_unrooted
from .weights import WeightError, parse_value, read_weights

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2
STAT_KEYS = ("table_entries", "matching_solves", "derived_deletions", "work_units")
BENCH_COLUMNS = ("size_T", "size_T2", "degree_cap", "algo", "wall_ms", "matching_solves",
                 "work_units", "weight", "trial")


class InputError(Exception):
    pass


def format_weight(w: float):
    """12 significant digits; infinities become strings since JSON has none."""
    if math.isinf(w):
        return "-inf" if w < 0 else "inf"
    return float(f"{w:.12g}")


def result_json(mode: str, emb: Embedding, with_mapping: bool = True) -> dict:
    out = {"mode": mode, "weight": format_weight(emb.weight)}
    if with_mapping:
        out["mapping"] = [list(p) for p in emb.pairs]
        out["skipped"] = [vid for _, vid in emb.skipped]
        out["skipped_by_tree"] = {
            "tree1": [vid for side, vid in emb.skipped if side == 1],
            "tree2": [vid for side, vid in emb.skipped if side == 2],
        }
    out["roots"] = {"tree1": emb.roots[0], "tree2": emb.roots[1]} if emb.roots else None
    out["stats"] = {k: int(emb.stats.get(k, 0)) for k in STAT_KEYS}
    return out


def _load(path: str, reader, what: str):
    try:
        return reader(path)
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror or exc}") from None
    except (TreeError, WeightError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _root(tree: LabeledTree, rid: Optional[str], flag: str) -> str:
    if rid is None:
        return tree.ids[0]
    if rid not in tree.index:
        raise InputError(f"{flag}: unknown vertex id {rid!r}")
    return rid


def _solve(args) -> int:
    T = _load(args.tree1, read_tree, "tree")
    T2 = _load(args.tree2, read_tree, "tree")
    scheme = _load(args.weights, read_weights, "weights")
    r = _root(T, args.root1, "--root1")
    s = _root(T2, args.root2, "--root2")
    cmd = args.command
    if cmd == "oracle":
        mode = args.mode
        try:
            _, emb = oracle_best(T, T2, scheme, mode.replace("-", "_"), (r, s), cap=args.cap)
        except OracleError as exc:
            raise InputError(str(exc)) from None
        if mode != "unrooted" and emb.feasible:
            emb = Embedding(emb.pairs, emb.weight, (r, s), emb.skipped, emb.stats)
        name = f"oracle-{mode}"
    elif cmd == "unrooted":
        emb = lawecse_unrooted(T, T2, scheme, root=r, kernel=args.backend)
        name = cmd
    else:
        solver = lawecse_rooted if cmd == "rooted" else root_to_root
        emb = solver(root_at(T, r), root_at(T2, s), scheme, kernel=args.backend)
        name = cmd
    if emb.feasible and args.min_weight is not None and emb.weight < args.min_weight:
        emb = Embedding.infeasible(emb.stats)
    print(json.dumps(result_json(name, emb, not args.no_mapping)))
    return EXIT_OK if emb.feasible else EXIT_INFEASIBLE


def parse_matrix(text: str) -> list[list[float]]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([parse_value(x) for x in line.split()])
        except ValueError:
            raise InputError(f"line {lineno}: bad matrix entry in {line!r}") from None
        if math.inf in rows[-1]:
            raise InputError(f"line {lineno}: +inf is not a valid edge weight")
        if len(rows[-1]) != len(rows[0]):
            raise InputError(f"line {lineno}: expected {len(rows[0])} entries, got {len(rows[-1])}")
    return rows


def _matching(args) -> int:
    if args.matrix in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(args.matrix, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read matrix file {args.matrix}: {exc.strerror or exc}") from None
    W = parse_matrix(text)
    m = solve_mwm(W)
    out = {"mode": "matching", "weight": format_weight(m.weight),
           "pairs": [list(p) for p in m.pairs], "delete": {}}
    for side in Side:
        fam = solve_all_deletions(W, side)
        out["delete"][side.value] = [format_weight(fam.per_deleted[c].weight)
                                    for c in sorted(fam.per_deleted)]
    print(json.dumps(out))
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if not vals or min(vals) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return vals


def _bench(args) -> int:
    if args.max_degree < 2:
        raise InputError("--max-degree must be at least 2")
    if args.trials < 1:
        raise InputError("--trials must be positive")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for n in args.sizes:
        for trial in range(args.trials):
            rng = rng_for(args.seed, n, trial)
            T = random_tree(n, rng, args.max_degree, prefix="a")
            T2 = random_tree(n, rng, args.max_degree, prefix="b")
            scheme = random_scheme(rng)
            start = time.perf_counter()
            if args.algo == "opt":
                emb = lawecse_unrooted(T, T2, scheme, kernel=args.backend)
            else:
                emb = naive_unrooted(T, T2, scheme, kernel=args.backend)
            wall = 0.0 if args.no_wall else (time.perf_counter() - start) * 1000
            writer.writerow([n, n, args.max_degree, args.algo, f"{wall:.3f}",
                             emb.stats["matching_solves"], emb.stats["work_units"],
                             format_weight(emb.weight), trial])
            sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lawecse", description="Largest weight common subtree embeddings.")
    sub = parser.add_subparsers(dest="command", required=True)
    backends = ["auto", *sorted(KERNELS)]

    def solver(name: str, help_: str):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--tree1", required=True, metavar="FILE")
        p.add_argument("--tree2", required=True, metavar="FILE")
        p.add_argument("--weights", required=True, metavar="FILE")
        p.add_argument("--root1", metavar="ID", help="root of tree1 (default: first vertex)")
        p.add_argument("--root2", metavar="ID", help="root of tree2 (default: first vertex)")
        p.add_argument("--min-weight", type=float, metavar="W",
                       help="report results below W as infeasible")
        p.add_argument("--no-mapping", action="store_true", help="omit mapping and skipped")
        p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; unused")
        p.add_argument("--backend", choices=backends, default="auto")
        return p

    solver("rooted", "best embedding between the rooted trees")
    solver("root-to-root", "best embedding mapping root onto root")
    solver("unrooted", "best embedding over all rootings")
    po = solver("oracle", "exhaustive search on small trees")
    po.add_argument("--mode", choices=["rooted", "root-to-root", "unrooted"], default="unrooted")
    po.add_argument("--cap", type=int, default=8, help="maximum tree size (default 8)")

    pm = sub.add_parser("matching", help="maximum weight matching of a dense matrix")
    pm.add_argument("--matrix", metavar="FILE", help="matrix file (default: stdin)")

    pb = sub.add_parser("bench", help="scaling runs on random trees, CSV output")
    pb.add_argument("--sizes", type=_int_list, default=[100, 200, 400])
    pb.add_argument("--max-degree", type=int, default=5)
    pb.add_argument("--trials", type=int, default=1)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--algo", choices=["opt", "naive"], default="opt")
    pb.add_argument("--backend", choices=backends, default="auto")
    pb.add_argument("--no-wall", action="store_true",
                    help="write wall_ms as 0 so that output is reproducible byte for byte")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "matching":
            return _matching(args)
        if args.command == "bench":
            return _bench(args)
        return _solve(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
