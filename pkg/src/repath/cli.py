"""Command-line front end.

    repath edge|node|both GRAPH [-r R] [-s S] [--path-file F] [--paths] [--oracle]
    repath rowmin MATRIX [--oracle]
    repath MODE --bench N [--seed S] [--kind U|D]

Node ids on the command line and in files are 1-based.  Report lines are
``element<TAB>distance[<TAB>path]`` where elements are ``e<k>`` (edge ``k`` in
file order) or ``v<k>``.
"""
import argparse
import json
import sys
import time

import numpy as np

from . import _accel, steps
from . import concise_matrix as cm
from . import graph as gr
from .generators import erdos_renyi, layered_dag, random_concise
from .replacement_paths import (
    EDGE, NODE, check_report_paths, context_for, oracle_replacement,
    solve_edge_avoiding, solve_node_avoiding,
)
from .rowmin import naive_row_minima, row_minima_linear

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def build_parser():
    ap = argparse.ArgumentParser(prog="repath", description="Replacement paths and concise-matrix row minima.")
    ap.add_argument("mode", choices=["edge", "node", "both", "rowmin"])
    ap.add_argument("input", nargs="?", help="graph file (edge/node/both) or matrix file (rowmin)")
    ap.add_argument("-r", "--source", type=int, help="source node, 1-based (default 1 or path start)")
    ap.add_argument("-s", "--sink", type=int, help="sink node, 1-based (default n or path end)")
    ap.add_argument("--path-file", help="shortest r-s path as whitespace-separated 1-based nodes")
    ap.add_argument("--format", choices=["tsv", "jsonl"], default="tsv")
    ap.add_argument("--oracle", action="store_true", help="also run the brute-force oracle and diff")
    ap.add_argument("--paths", action="store_true", help="emit reconstructed replacement paths")
    ap.add_argument("--bench", type=int, metavar="N", help="scaling run at sizes N, 2N, 4N")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kind", choices=["U", "D"], default="U", help="graph kind for --bench")
    return ap


# -- formatting -------------------------------------------------------------------

def _dist_text(d):
    if d == float("inf") or d == cm.INF:
        return "inf"
    if d == float("-inf"):
        return "-inf"
    return str(int(d))


def _emit(out, fmt, record):
    if fmt == "jsonl":
        out.write(json.dumps(record, separators=(",", ":")) + "\n")
    else:
        out.write("\t".join(str(v) for v in record.values()) + "\n")


def _report_records(rep, with_paths):
    tag = "e" if rep.mode == EDGE else "v"
    for e in rep.entries:
        rec = {"element": f"{tag}{e.element + 1}", "distance": _dist_text(e.distance)}
        if with_paths:
            rec["path"] = ",".join(f"e{k + 1}" for k in (e.path or [])) or "-"
        yield rec


def _first_diff(rep, ref):
    for a, b in zip(rep.entries, ref.entries):
        if a.distance != b.distance:
            tag = "e" if rep.mode == EDGE else "v"
            return (f"{rep.mode} {tag}{a.element + 1}: pipeline {_dist_text(a.distance)} "
                    f"!= oracle {_dist_text(b.distance)}")
    return None


# -- runs ---------------------------------------------------------------------------

def _read_path(G, fname):
    try:
        with open(fname) as fh:
            toks = fh.read().split()
        nodes = [int(t) - 1 for t in toks]
    except ValueError:
        raise UsageError(f"{fname}: path file must hold integer node ids") from None
    if len(nodes) < 2 or not all(0 <= x < G.n for x in nodes):
        raise UsageError(f"{fname}: need at least two nodes in 1..{G.n}")
    return gr.PathSpec.from_nodes(G, nodes)


def run_graph(args, out):
    G = gr.load(args.input)
    P = _read_path(G, args.path_file) if args.path_file else None
    r = args.source - 1 if args.source is not None else (P.source if P is not None else 0)
    s = args.sink - 1 if args.sink is not None else (P.sink if P is not None else G.n - 1)
    ctx = context_for(G, r, s, P)
    modes = {"edge": [EDGE], "node": [NODE], "both": [EDGE, NODE]}[args.mode]
    status = EXIT_OK
    for mode in modes:
        solve = solve_edge_avoiding if mode == EDGE else solve_node_avoiding
        rep = solve(G, r, s, paths=args.paths, ctx=ctx)
        for rec in _report_records(rep, args.paths):
            _emit(out, args.format, rec)
        if args.paths and check_report_paths(G, rep):
            print(f"error: invalid reconstructed path in {mode}", file=sys.stderr)
            status = EXIT_MISMATCH
        if args.oracle:
            diff = _first_diff(rep, oracle_replacement(G, r, s, ctx.P, mode))
            if diff:
                print(f"mismatch: {diff}", file=sys.stderr)
                status = EXIT_MISMATCH
    return status


def run_rowmin(args, out):
    M = cm.load(args.input)
    res = row_minima_linear(M)
    for i in range(M.n_rows):
        w = res.witnesses[i]
        rec = {"row": i + 1, "value": _dist_text(res.values[i]),
               "witness": "-" if w == cm.NO_WITNESS else str(M.column_ids[w])}
        _emit(out, args.format, rec)
    if args.oracle:
        ref = naive_row_minima(M)
        bad = np.flatnonzero((ref.values != res.values) | (ref.witnesses != res.witnesses))
        if bad.size:
            i = int(bad[0])
            print(f"mismatch: row {i + 1}: linear {_dist_text(res.values[i])} "
                  f"!= naive {_dist_text(ref.values[i])}", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def _bench_point(args, size, rng):
    if args.mode == "rowmin":
        M = random_concise(size, size, rng)
        row_minima_linear(M)  # warm-up
        with steps.counting() as c:
            t0 = time.perf_counter()
            row_minima_linear(M)
            wall = time.perf_counter() - t0
        return size, size, sum(c.values()), 0, wall
    if args.kind == "U":
        G = erdos_renyi(size, 2 * size, rng, 1, 1000)
    else:
        G = layered_dag(size, 2 * size, rng)
    r, s = 0, size - 1
    modes = {"edge": [solve_edge_avoiding], "node": [solve_node_avoiding],
             "both": [solve_edge_avoiding, solve_node_avoiding]}[args.mode]
    for f in modes:
        f(G, r, s)  # warm-up
    with steps.counting() as c:
        t0 = time.perf_counter()
        ctx = context_for(G, r, s)
        for f in modes:
            f(G, r, s, ctx=ctx)
        wall = time.perf_counter() - t0
    sssp_steps = c.get("sssp", 0)
    return G.n, G.m, sum(c.values()) - sssp_steps, sssp_steps, wall


def run_bench(args, out):
    if args.bench < 2:
        raise UsageError("--bench needs N >= 2")
    rng = np.random.default_rng(args.seed)
    out.write(f"# seed={args.seed} mode={args.mode} kind={args.kind} backend={_accel.backend()}\n")
    out.write("n\tm\tsteps\tsssp_steps\twall_s\n")
    for size in (args.bench, 2 * args.bench, 4 * args.bench):
        n, m, work, sw, wall = _bench_point(args, size, rng)
        out.write(f"{n}\t{m}\t{work}\t{sw}\t{wall:.4f}\n")
    return EXIT_OK


def run(args, out=None):
    out = out or sys.stdout
    if args.bench is not None:
        return run_bench(args, out)
    if not args.input:
        raise UsageError("an input file is required unless --bench is given")
    return run_rowmin(args, out) if args.mode == "rowmin" else run_graph(args, out)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (UsageError, gr.GraphError, cm.MatrixFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
