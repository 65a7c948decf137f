"""Replacement-path matrices built from shortest-path trees.

Failing ``e_i`` (or ``v_i``) splits the nodes by level: everything whose tree
path leaves the shortest path before index ``i`` stays reachable.  A detour
is a prefix inside that region, one crossing edge, and a suffix on a shortest
path to ``s``.  Each graph edge therefore contributes one matrix column whose
finite rows are the failures it can bypass.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import steps
from ._kernels import graph as K
from .concise_matrix import ConciseMatrix, KConciseMatrix
from .graph import Graph, GraphError, PathSpec, levels, sssp, sssp_to


@dataclass(frozen=True, eq=False)
class ReductionContext:
    G: Graph
    P: PathSpec
    T: object       # SsspResult from r containing P
    T_rev: object   # SsspResult toward s
    lam: np.ndarray

    @property
    def p(self):
        return self.P.p

    @classmethod
    def build(cls, G, P):
        """Run both SSSPs and the level pass; ``P`` must be a shortest path."""
        P.check(G)
        if P.p < 1:
            raise GraphError("path must have at least one edge")
        T = sssp(G, P.source, force_path=P)
        T_rev = sssp_to(G, P.sink, force_path=P)
        return cls(G, P, T, T_rev, levels(T, P))


def edge_replacement_matrix(ctx):
    """Concise ``p``-row matrix whose row ``i`` minimum is ``d(G - e_i)``.

    Column ``j`` belongs to edge ``j``; column ids are the edge ids.
    """
    G = ctx.G
    a, b, c, work = K.edge_columns(G.u, G.v, G.w, not G.directed, ctx.lam,
                                   ctx.T.dist, ctx.T_rev.dist)
    work += K.mark_path_dummies(c, ctx.P.edges)
    steps.add("reduce", work)
    return ConciseMatrix(ctx.p, a, b, c, range(G.m))


@dataclass(frozen=True, eq=False)
class AuxiliaryGraph:
    """Hub graph on ``n + p`` nodes: originals, then ``r_0``, ``r_1..r_{p-1}``.

    ``edge_origin[k]`` is the original edge behind edge ``k`` of ``graph``, or
    ``-1`` for ``r_0 r_i``.  For a hub edge ``r_i x`` it is the cheapest edge
    ``ux`` entering from the region, and ``hub_from[x]`` is that ``u``.
    """
    graph: Graph
    n_original: int
    hub_weight: np.ndarray
    hub_edge: np.ndarray
    hub_from: np.ndarray
    edge_origin: np.ndarray

    @property
    def root(self):
        return self.n_original

    def hub(self, i):
        return self.n_original + i


def build_g0(ctx):
    G, P, p, lam = ctx.G, ctx.P, ctx.p, ctx.lam
    n = G.n
    hw, he, hu, work = K.hub_weights(G.u, G.v, G.w, not G.directed, lam, P.nodes,
                                     ctx.T.dist, p)
    inner, w2 = K.inner_edges(G.u, G.v, lam, P.nodes, p)
    steps.add("reduce", work + w2)
    r0 = n
    hubs = np.arange(1, p, dtype=np.int64)
    xs = np.flatnonzero(he >= 0)
    ie = np.flatnonzero(inner)
    parts_u = [np.full(p - 1, r0), n + lam[xs], G.u[ie]]
    parts_v = [n + hubs, xs, G.v[ie]]
    parts_w = [np.zeros(p - 1, dtype=np.int64), hw[xs], G.w[ie]]
    origin = [np.full(p - 1, -1), he[xs], ie]
    if not G.directed:
        # both orientations of each G[V_i] edge; hub arcs only point away from r_0
        parts_u.append(G.v[ie])
        parts_v.append(G.u[ie])
        parts_w.append(G.w[ie])
        origin.append(ie)
    kind = "dag" if G.kind == "dag" else "directed"
    G0 = Graph(n + p, np.concatenate(parts_u), np.concatenate(parts_v),
               np.concatenate(parts_w), kind)
    steps.add("reduce", G0.m + n + p)
    return AuxiliaryGraph(G0, n, hw, he, hu, np.concatenate(origin).astype(np.int64))


def node_replacement_matrix(ctx, T0):
    """2-concise ``(p-1)``-row matrix whose row ``i`` minimum is ``d(G - v_i)``.

    ``T0`` holds distances from ``r_0`` in the hub graph; the first ``n``
    entries are read as ``d_{G_0}(r_0, x)``.
    """
    if ctx.p < 2:
        raise GraphError("node-avoiding needs a path with an interior node")
    G = ctx.G
    d0 = np.ascontiguousarray(T0.dist[:G.n])
    a, b, c, work = K.node_columns(G.u, G.v, G.w, not G.directed, ctx.lam, ctx.P.nodes,
                                   d0, ctx.T.dist, ctx.T_rev.dist, ctx.p)
    steps.add("reduce", work)
    return KConciseMatrix(ctx.p - 1, a, b, c, column_ids=range(G.m))


def subdivide_for_node_reduction(G, P):
    """Double every weight and split each path edge at a fresh midpoint.

    Path edge ``e_i = xy`` becomes ``x v`` and ``v y`` with both halves equal to
    the original weight, so ``2 d(G - e_i) = d(G' - v)``.  In the returned
    path the midpoint of ``e_i`` is node ``2i - 1``.
    """
    n, p = G.n, P.p
    on_path = np.zeros(G.m, dtype=bool)
    on_path[P.edges] = True
    keep = np.flatnonzero(~on_path)
    mids = n + np.arange(p, dtype=np.int64)
    starts, ends = P.nodes[:-1], P.nodes[1:]
    wp = G.w[P.edges]
    u = np.concatenate([G.u[keep], starts, mids])
    v = np.concatenate([G.v[keep], mids, ends])
    w = np.concatenate([2 * G.w[keep], wp, wp])
    G2 = Graph(n + p, u, v, w, G.kind)
    first = keep.size + np.arange(p)
    nodes = np.empty(2 * p + 1, dtype=np.int64)
    nodes[0::2] = P.nodes
    nodes[1::2] = mids
    edges = np.empty(2 * p, dtype=np.int64)
    edges[0::2] = first
    edges[1::2] = first + p
    return G2, PathSpec(nodes, edges)


class EdgeClass(Enum):
    SET1 = 1  # s cut off from r
    SET2 = 2  # a negative edge is still reachable: no finite shortest walk
    SET3 = 3  # nonnegative component; finite distance


@dataclass(frozen=True)
class Classification:
    tags: list          # EdgeClass per path edge, in path order
    distances: list     # INF, -INF as floats, or an int
    common_distance: object


def _component(G, r, skip_edge):
    indptr, head, _, arc_e = G.out
    seen = np.zeros(G.n, dtype=bool)
    seen[r] = True
    stack = [r]
    while stack:
        x = stack.pop()
        for t in range(indptr[x], indptr[x + 1]):
            y = int(head[t])
            if arc_e[t] != skip_edge and not seen[y]:
                seen[y] = True
                stack.append(y)
    return seen


def _component_distance(G, r, s, seen, e):
    keep = seen[G.u] & seen[G.v]
    keep[e] = False
    sub = Graph(G.n, G.u[keep], G.v[keep], G.w[keep], "undirected")
    return int(sssp(sub, r).dist[s])


def classify_negative_edges(G, P):
    """Tag each edge of the walk ``P`` on an undirected graph with negative weights.

    Uses one component scan per path edge, ``O(p (n + m))``.  When the
    component of ``r`` holds a negative edge, every third-class edge cuts all
    of them off behind a bridge, so one Dijkstra gives their shared distance.
    Without a reachable negative edge the distances differ per edge and each
    one gets its own Dijkstra; ``common_distance`` is then ``None``.
    """
    if G.directed:
        raise GraphError("classification applies to undirected graphs")
    r, s = P.source, P.sink
    for x, what in ((r, "source"), (s, "sink")):
        if not 0 <= x < G.n:
            raise GraphError(f"{what} {x} is not a node")
    P.check(G)
    negative = G.w < 0
    whole = _component(G, r, -1)
    shared = bool(np.any(negative & whole[G.u]))
    tags, comps = [], {}
    for e in P.edges:
        e = int(e)
        if e not in comps:
            seen = _component(G, r, e)
            if not seen[s]:
                tag = EdgeClass.SET1
            else:
                inside = seen[G.u] & seen[G.v]
                inside[e] = False
                tag = EdgeClass.SET2 if np.any(negative & inside) else EdgeClass.SET3
            comps[e] = (tag, seen)
        tags.append(comps[e][0])
        steps.add("classify", G.n + G.m)
    third = [int(e) for e in P.edges if comps[int(e)][0] is EdgeClass.SET3]
    common = None
    if third and shared:
        common = _component_distance(G, r, s, comps[third[0]][1], third[0])
        own = dict.fromkeys(third, common)
    else:
        own = {e: _component_distance(G, r, s, comps[e][1], e) for e in third}
    dist = [float("inf") if t is EdgeClass.SET1 else float("-inf") if t is EdgeClass.SET2
            else own[int(e)] for e, t in zip(P.edges, tags)]
    return Classification(tags, dist, common)
