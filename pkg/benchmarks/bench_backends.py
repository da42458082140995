"""Compiled vs pure-Python kernel on random unrooted instances.

    python3 benchmarks/bench_backends.py --sizes 50,100,200 --repeat 3

Prints one CSV row per size: best-of-``repeat`` wall time for each kernel,
the speedup, and whether both kernels produced bitwise identical tables.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from lawecse import KERNELS, compute_all_context_tables
from lawecse.random_trees import random_scheme, random_tree, rng_for


def best_time(fn, repeat: int):
    best, out = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200")
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if "c" not in KERNELS:
        print("compiled kernel not built; only the Python kernel is available", file=sys.stderr)
        return 1
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["size", "c_ms", "python_ms", "speedup", "identical"])
    for n in (int(x) for x in args.sizes.split(",")):
        rng = rng_for(args.seed, n)
        T = random_tree(n, rng, args.max_degree, prefix="a")
        T2 = random_tree(n, rng, args.max_degree, prefix="b")
        scheme = random_scheme(rng)
        runs = {}
        for name in ("c", "python"):
            runs[name] = best_time(
                lambda name=name: compute_all_context_tables(T, T.ids[0], T2, scheme, name).tables,
                args.repeat)
        a, b = runs["c"][1], runs["python"][1]
        same = np.array_equal(a.rtr, b.rtr) and np.array_equal(a.sk, b.sk)
        tc, tp = runs["c"][0], runs["python"][0]
        out.writerow([n, f"{tc * 1e3:.2f}", f"{tp * 1e3:.2f}", f"{tp / tc:.1f}", same])
        sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
