"""Edge- and node-avoiding replacement paths.

Both solvers run the shortest-path trees once, build the replacement matrix,
and take its row minima in linear time.  Witness columns turn back into paths:
a tree prefix from ``r``, the crossing edge, and a tree suffix into ``s``.
"""
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from . import steps
from .graph import (
    INF, GraphError, PathSpec, levels, sssp, sssp_to, tree_path, walk_weight,
)
from .reductions import (
    ReductionContext, build_g0, edge_replacement_matrix, node_replacement_matrix,
)
from .rowmin import row_minima_linear

EDGE = "edge_avoiding"
NODE = "node_avoiding"


def _public(d):
    """int64 distance to a report value: ``int`` or ``float('inf')``."""
    return float("inf") if d == INF else int(d)


@dataclass
class Entry:
    index: int                   # 1-based position i of the failed e_i / v_i
    element: int                 # failed edge id or node id
    distance: object             # int, inf, or -inf
    path: Optional[List[int]] = None


@dataclass
class ReplacementReport:
    mode: str
    source: int
    sink: int
    path: PathSpec
    entries: List[Entry] = field(default_factory=list)
    fallbacks: int = 0           # paths recomputed because a tie broke the tree route

    @property
    def distances(self):
        return [e.distance for e in self.entries]


def _resolve_path(G, r, s, P):
    if P is None:
        return None
    if not isinstance(P, PathSpec):
        P = PathSpec.from_nodes(G, P)
    P.check(G)
    if P.source != r or P.sink != s:
        raise GraphError("given path does not run from r to s")
    return P


def _check_input(G, r, s):
    for x, what in ((r, "source"), (s, "sink")):
        if not 0 <= x < G.n:
            raise GraphError(f"{what} {x} is not a node")
    if r == s:
        raise GraphError("source and sink must differ")
    if G.kind == "undirected" and G.m and G.w.min() < 0:
        raise GraphError("negative weights on an undirected graph; "
                         "use classify_negative_edges instead")


def context_for(G, r, s, P=None):
    """Shortest-path trees and levels for ``r -> s``, extracting ``P`` if absent."""
    _check_input(G, r, s)
    P = _resolve_path(G, r, s, P)
    if P is not None:
        return ReductionContext.build(G, P)
    T = sssp(G, r)
    if T.dist[s] == INF:
        raise GraphError(f"sink {s} is unreachable from {r}")
    edges = tree_path(T, s)
    nodes = [r]
    for e in edges:
        nodes.append(G.other_end(e, nodes[-1]) if not G.directed else int(G.v[e]))
    P = PathSpec(np.array(nodes, dtype=np.int64), np.array(edges, dtype=np.int64))
    T_rev = sssp_to(G, s, force_path=P)
    return ReductionContext(G, P, T, T_rev, levels(T, P))


def _avoids(G, edges, element, mode):
    if mode == EDGE:
        return element not in edges
    return not any(G.u[e] == element or G.v[e] == element for e in edges)


def _valid(G, r, s, edges, dist, element, mode):
    try:
        end, weight = walk_weight(G, r, edges)
    except GraphError:
        return False
    return end == s and weight == dist and _avoids(G, edges, element, mode)


def _fallback_path(G, r, s, element, mode):
    H, kept = G.without_edges([element]) if mode == EDGE else G.without_node(element)
    T = sssp(H, r)
    return [int(kept[e]) for e in tree_path(T, s)]


def _orient(ctx, e):
    G = ctx.G
    x, y = int(G.u[e]), int(G.v[e])
    if not G.directed and ctx.lam[y] < ctx.lam[x]:
        x, y = y, x
    return x, y


def _finish(ctx, rep, i, element, dist, route, mode):
    if dist == INF:
        rep.entries.append(Entry(i, element, float("inf")))
        return
    if route is not None:
        if not _valid(ctx.G, ctx.P.source, ctx.P.sink, route, int(dist), element, mode):
            rep.fallbacks += 1
            route = _fallback_path(ctx.G, ctx.P.source, ctx.P.sink, element, mode)
    rep.entries.append(Entry(i, element, int(dist), route))


def solve_edge_avoiding(G, r, s, P=None, paths=False, ctx=None):
    """``d(G - e_i)(r, s)`` for every edge ``e_i`` of a shortest ``r s``-path."""
    ctx = ctx or context_for(G, r, s, P)
    M = edge_replacement_matrix(ctx)
    res = row_minima_linear(M)
    rep = ReplacementReport(EDGE, r, s, ctx.P)
    for i in range(1, ctx.p + 1):
        dist = res.values[i - 1]
        route = None
        if paths and dist != INF:
            j = res.witness(i)
            x, y = _orient(ctx, j)
            route = tree_path(ctx.T, x) + [j] + tree_path(ctx.T_rev, y)
        _finish(ctx, rep, i, int(ctx.P.edges[i - 1]), dist, route if paths else None, EDGE)
    return rep


def hub_tree(ctx):
    """The hub graph and its shortest-path tree from ``r_0``."""
    aux = build_g0(ctx)
    return aux, sssp(aux.graph, aux.root)


def _map_hub_path(ctx, aux, T0, x):
    out = []
    G0 = aux.graph
    for k in tree_path(T0, x):
        head = int(G0.u[k])
        if head == aux.root:
            continue
        if head > aux.n_original:
            # hub arc r_i -> x': the cheapest entry edge from the region
            target = int(G0.v[k])
            out += tree_path(ctx.T, int(aux.hub_from[target])) + [int(aux.hub_edge[target])]
        else:
            out.append(int(aux.edge_origin[k]))
    return out


def solve_node_avoiding(G, r, s, P=None, paths=False, ctx=None):
    """``d(G - v_i)(r, s)`` for every interior node ``v_i`` of a shortest path."""
    ctx = ctx or context_for(G, r, s, P)
    rep = ReplacementReport(NODE, r, s, ctx.P)
    if ctx.p < 2:
        return rep
    aux, T0 = hub_tree(ctx)
    M = node_replacement_matrix(ctx, T0)
    res = row_minima_linear(M)
    for i in range(1, ctx.p):
        dist = res.values[i - 1]
        route = None
        if paths and dist != INF:
            j = res.witness(i)
            x, y = _orient(ctx, j)
            if ctx.lam[x] == i:
                head = _map_hub_path(ctx, aux, T0, x)
            else:
                head = tree_path(ctx.T, x)
            route = head + [j] + tree_path(ctx.T_rev, y)
        _finish(ctx, rep, i, int(ctx.P.nodes[i]), dist, route if paths else None, NODE)
    return rep


def oracle_replacement(G, r, s, P=None, mode=EDGE, paths=False):
    """Delete each path element in turn and rerun SSSP."""
    _check_input(G, r, s)
    P = _resolve_path(G, r, s, P)
    if P is None:
        P = context_for(G, r, s).P
    rep = ReplacementReport(mode, r, s, P)
    if mode == EDGE:
        failures = [(i, int(P.edges[i - 1])) for i in range(1, P.p + 1)]
    elif mode == NODE:
        failures = [(i, int(P.nodes[i])) for i in range(1, P.p)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    with steps.paused():
        for i, element in failures:
            H, kept = G.without_edges([element]) if mode == EDGE else G.without_node(element)
            T = sssp(H, r)
            d = T.dist[s]
            route = None
            if paths and d != INF:
                route = [int(kept[e]) for e in tree_path(T, s)]
            rep.entries.append(Entry(i, element, _public(d), route))
    return rep


def check_report_paths(G, rep):
    """Every reported path is an ``r s`` walk that avoids its element and sums right."""
    bad = []
    for e in rep.entries:
        if e.path is None or e.distance == float("inf"):
            continue
        if not _valid(G, rep.source, rep.sink, e.path, e.distance, e.element, rep.mode):
            bad.append(e.index)
    return bad
