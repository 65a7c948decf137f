"""Compare the numba kernels with the interpreted fallback.

Each backend runs in its own process because the choice is made at import
time from ``REPATH_NO_NUMBA``.

    python3 benchmarks/bench_kernels.py [--sizes 1024 4096] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def measure(sizes, repeat, seed):
    from repath import backend
    from repath.generators import erdos_renyi, random_concise
    from repath.replacement_paths import solve_edge_avoiding, solve_node_avoiding
    from repath.rowmin import row_minima_linear

    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        M = random_concise(n, n, rng)
        G = erdos_renyi(n, 2 * n, rng, 1, 1000)
        cases = {
            "row_minima_linear": lambda: row_minima_linear(M),
            "edge_avoiding": lambda: solve_edge_avoiding(G, 0, n - 1),
            "node_avoiding": lambda: solve_node_avoiding(G, 0, n - 1),
        }
        for name, fn in cases.items():
            fn()  # compile / warm caches
            best = min(_timed(fn) for _ in range(repeat))
            rows.append({"backend": backend(), "case": name, "n": n, "seconds": best})
    return rows


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[1024, 4096])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        json.dump(measure(args.sizes, args.repeat, args.seed), sys.stdout)
        return
    results = {}
    for label, flag in (("numba", "0"), ("python", "1")):
        env = dict(os.environ, REPATH_NO_NUMBA=flag)
        cmd = [sys.executable, __file__, "--child", "--repeat", str(args.repeat),
               "--seed", str(args.seed), "--sizes", *map(str, args.sizes)]
        out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True).stdout
        results[label] = {(r["case"], r["n"]): r["seconds"] for r in json.loads(out)}
    print(f"# seed={args.seed}")
    print(f"{'case':<20}{'n':>8}{'numba_s':>12}{'python_s':>12}{'speedup':>10}")
    for key in results["numba"]:
        a, b = results["numba"][key], results["python"][key]
        print(f"{key[0]:<20}{key[1]:>8}{a:>12.4f}{b:>12.4f}{b / a:>10.1f}")


if __name__ == "__main__":
    main()
