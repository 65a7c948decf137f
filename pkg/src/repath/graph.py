"""Weighted graphs, single-source shortest paths, and shortest-path trees.

Nodes are ``0..n-1`` and edge ids are positions in the edge list.  Three
kinds exist: ``undirected`` and ``dag`` for inputs, plus ``directed`` for
internal graphs with nonnegative weights that need Dijkstra on one-way arcs.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import steps
from ._kernels import graph as K

INF = np.iinfo(np.int64).max
KINDS = ("undirected", "dag", "directed")
# keeps every finite path sum, plus one more edge, clear of the INF sentinel
_WEIGHT_BUDGET = 1 << 61


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    pass


def _csr(tails, heads, weights, eids, n):
    order = np.argsort(tails, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, tails + 1, 1)
    np.cumsum(indptr, out=indptr)
    return (indptr, np.ascontiguousarray(heads[order]),
            np.ascontiguousarray(weights[order]), np.ascontiguousarray(eids[order]))


class Graph:
    """Immutable weighted graph with CSR adjacency in both directions."""

    def __init__(self, n_nodes, u, v, w, kind="undirected"):
        if kind not in KINDS:
            raise GraphError(f"unknown graph kind {kind!r}")
        self.kind = kind
        self.n = int(n_nodes)
        self.u = np.ascontiguousarray(np.asarray(u, dtype=np.int64))
        self.v = np.ascontiguousarray(np.asarray(v, dtype=np.int64))
        self.w = np.ascontiguousarray(np.asarray(w, dtype=np.int64))
        if not (self.u.shape == self.v.shape == self.w.shape) or self.u.ndim != 1:
            raise GraphError("u, v, w must be 1-d arrays of equal length")
        if self.n < 0:
            raise GraphError("node count must be nonnegative")
        if self.m and (min(self.u.min(), self.v.min()) < 0
                       or max(self.u.max(), self.v.max()) >= self.n):
            raise GraphError("edge endpoint outside 0..n-1")
        loops = np.flatnonzero(self.u == self.v)
        if loops.size:
            raise GraphError(f"self-loop on edge {int(loops[0])}")
        if self.m and int(np.abs(self.w).astype(object).sum()) >= _WEIGHT_BUDGET:
            raise GraphError("total absolute weight too large for exact int64 distances")
        if kind == "directed" and self.m and self.w.min() < 0:
            raise GraphError("directed kind requires nonnegative weights")
        for arr in (self.u, self.v, self.w):
            arr.setflags(write=False)
        eid = np.arange(self.m, dtype=np.int64)
        if kind == "undirected":
            tails = np.concatenate([self.u, self.v])
            heads = np.concatenate([self.v, self.u])
            self.out = _csr(tails, heads, np.concatenate([self.w, self.w]),
                            np.concatenate([eid, eid]), self.n)
            self.inc = self.out
        else:
            self.out = _csr(self.u, self.v, self.w, eid, self.n)
            self.inc = _csr(self.v, self.u, self.w, eid, self.n)
        self._topo = None
        if kind == "dag":
            self.topological_order()

    @classmethod
    def from_edges(cls, n_nodes, edges, kind="undirected"):
        """``edges`` is an iterable of ``(u, v, w)`` with 0-based endpoints."""
        edges = list(edges)
        if not edges:
            return cls(n_nodes, [], [], [], kind)
        u, v, w = zip(*edges)
        return cls(n_nodes, u, v, w, kind)

    @property
    def m(self):
        return self.u.shape[0]

    @property
    def directed(self):
        return self.kind != "undirected"

    @property
    def edges(self):
        return [(int(a), int(b), int(c), e) for e, (a, b, c)
                in enumerate(zip(self.u, self.v, self.w))]

    def other_end(self, e, x):
        return int(self.v[e]) if self.u[e] == x else int(self.u[e])

    def topological_order(self):
        if self._topo is None:
            indptr, head, _, _ = self.out
            order, count, work = K.topo_order(indptr, head, self.n)
            steps.add("sssp", work)
            if count < self.n:
                raise GraphError("graph has a directed cycle")
            self._topo = order
        return self._topo

    def without_edges(self, drop):
        keep = np.ones(self.m, dtype=bool)
        keep[list(drop)] = False
        return Graph(self.n, self.u[keep], self.v[keep], self.w[keep], self.kind), \
            np.flatnonzero(keep)

    def without_node(self, x):
        keep = (self.u != x) & (self.v != x)
        return Graph(self.n, self.u[keep], self.v[keep], self.w[keep], self.kind), \
            np.flatnonzero(keep)

    def reversed(self):
        if not self.directed:
            return self
        return Graph(self.n, self.v, self.u, self.w, self.kind)

    def __repr__(self):
        return f"Graph(kind={self.kind!r}, n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class PathSpec:
    nodes: np.ndarray  # v_0 .. v_p
    edges: np.ndarray  # e_1 .. e_p, edges[i-1] joins nodes[i-1] and nodes[i]

    @property
    def p(self):
        return len(self.edges)

    @property
    def source(self):
        return int(self.nodes[0])

    @property
    def sink(self):
        return int(self.nodes[-1])

    def weight(self, G):
        return int(G.w[self.edges].sum())

    @classmethod
    def from_nodes(cls, G, nodes):
        """Resolve each hop to its lightest edge, then the smallest edge id."""
        nodes = [int(x) for x in nodes]
        if len(nodes) < 1:
            raise GraphError("path needs at least one node")
        best = {}
        for e in range(G.m):
            a, b, w = int(G.u[e]), int(G.v[e]), int(G.w[e])
            keys = [(a, b)] if G.directed else [(a, b), (b, a)]
            for k in keys:
                if k not in best or w < best[k][0]:
                    best[k] = (w, e)
        edges = []
        for x, y in zip(nodes, nodes[1:]):
            if (x, y) not in best:
                raise GraphError(f"no edge joins nodes {x} and {y}")
            edges.append(best[(x, y)][1])
        return cls(np.array(nodes, dtype=np.int64), np.array(edges, dtype=np.int64))

    def check(self, G):
        if len(self.nodes) != len(self.edges) + 1:
            raise GraphError("path needs exactly one more node than edges")
        for i, e in enumerate(self.edges):
            x, y = int(self.nodes[i]), int(self.nodes[i + 1])
            if not 0 <= e < G.m:
                raise GraphError(f"path edge {int(e)} does not exist")
            a, b = int(G.u[e]), int(G.v[e])
            if (a, b) != (x, y) and (G.directed or (b, a) != (x, y)):
                raise GraphError(f"edge {int(e)} does not join nodes {x} and {y}")


@dataclass(frozen=True, eq=False)
class SsspResult:
    """Distances plus a shortest-paths tree.

    ``toward_root`` marks a tree of distances *to* the root, whose parent
    pointers lead toward the root along edge direction.
    """
    root: int
    dist: np.ndarray
    parent_edge: np.ndarray
    parent: np.ndarray
    order: np.ndarray        # tree nodes, parents before children
    toward_root: bool = False

    def reachable(self, x):
        return self.dist[x] != INF


def _distances(G, src, reverse):
    indptr, head, arc_w, _ = G.inc if reverse else G.out
    if G.kind == "dag":
        order = G.topological_order()
        if reverse:
            order = order[::-1].copy()
        dist, work = K.dag_relax(order, indptr, head, arc_w, G.n, src)
    else:
        if G.kind == "undirected" and G.m and G.w.min() < 0:
            raise GraphError("negative weight on an undirected graph")
        dist, work = K.dijkstra(indptr, head, arc_w, G.n, src)
    steps.add("sssp", work)
    return dist


def _tree(G, src, dist, reverse, force_path: Optional[PathSpec]):
    indptr, head, arc_w, arc_e = G.inc if reverse else G.out
    if force_path is None:
        seeds = np.array([src], dtype=np.int64)
        seed_e = np.array([-1], dtype=np.int64)
        seed_p = np.array([-1], dtype=np.int64)
    else:
        P = force_path
        nodes, edges = P.nodes, P.edges
        if reverse:
            nodes, edges = nodes[::-1], edges[::-1]
        if nodes[0] != src:
            raise GraphError("forced path does not start at the tree root")
        for i, e in enumerate(edges):
            x, y = nodes[i], nodes[i + 1]
            if dist[x] == INF or dist[x] + G.w[e] != dist[y]:
                raise GraphError("given path is not a shortest path")
        seeds = np.ascontiguousarray(nodes, dtype=np.int64)
        seed_e = np.concatenate([[-1], edges]).astype(np.int64)
        seed_p = np.concatenate([[-1], nodes[:-1]]).astype(np.int64)
        if len(np.unique(seeds)) != len(seeds):
            raise GraphError("given path repeats a node")
    pe, pn, order, work = K.tight_tree(indptr, head, arc_w, arc_e, dist, seeds, seed_e, seed_p)
    steps.add("tree", work)
    return SsspResult(int(src), dist, pe, pn, order, toward_root=reverse)


def _check_node(G, x, what):
    if not 0 <= x < G.n:
        raise GraphError(f"{what} {x} is not a node")


def sssp(G, source, force_path=None):
    """Distances from ``source`` and a shortest-paths tree containing ``force_path``."""
    _check_node(G, source, "source")
    dist = _distances(G, source, reverse=False)
    return _tree(G, source, dist, False, force_path)


def sssp_to(G, sink, force_path=None):
    """Distances to ``sink`` and the tree of shortest paths into it."""
    _check_node(G, sink, "sink")
    dist = _distances(G, sink, reverse=True)
    return _tree(G, sink, dist, True, force_path)


def relaxation_ok(G, T):
    """Per-edge slack check: ``dist`` is a valid potential and tree edges are tight."""
    d = T.dist
    arcs = [(G.u, G.v)] if G.directed else [(G.u, G.v), (G.v, G.u)]
    for tails, heads in arcs:
        if T.toward_root:
            tails, heads = heads, tails
        fin = d[tails] != INF
        if np.any(d[heads][fin] > d[tails][fin] + G.w[fin]):
            return False
    for x in np.flatnonzero(T.parent_edge >= 0):
        e, y = T.parent_edge[x], T.parent[x]
        if d[x] != d[y] + G.w[e]:
            return False
    return True


def tree_path(T, x):
    """Edge ids of the tree path in travel order.

    For a tree from the root this is root -> ``x``; for a tree toward the
    root it is ``x`` -> root.
    """
    if T.dist[x] == INF:
        raise GraphError(f"node {x} is not reachable in the tree")
    out = []
    while x != T.root:
        e = int(T.parent_edge[x])
        if e < 0:
            raise GraphError(f"node {x} has no tree parent")
        out.append(e)
        x = int(T.parent[x])
    if not T.toward_root:
        out.reverse()
    return out


def levels(T, P):
    """``lam[v]``: largest ``i`` with ``v_i`` on the tree path from the root to ``v``.

    Nodes outside the tree get ``-1``.
    """
    for i in range(1, len(P.nodes)):
        if T.parent[P.nodes[i]] != P.nodes[i - 1] or T.parent_edge[P.nodes[i]] != P.edges[i - 1]:
            raise GraphError("the tree does not contain the path")
    lam, work = K.path_levels(T.order, T.parent, np.ascontiguousarray(P.nodes), len(T.dist))
    steps.add("levels", work)
    return lam


def walk_weight(G, start, edges):
    """Follow ``edges`` from ``start``; return ``(end_node, weight)`` or raise."""
    x = start
    total = 0
    for e in edges:
        e = int(e)
        if G.u[e] == x:
            x = int(G.v[e])
        elif not G.directed and G.v[e] == x:
            x = int(G.u[e])
        else:
            raise GraphError(f"edge {e} does not leave node {x}")
        total += int(G.w[e])
    return x, total


# -- text format ---------------------------------------------------------------
#
#   n m U|D
#   u v w          (m lines, 1-based endpoints, integer weight)

def loads(text):
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, t) for i, t in lines if t and not t[0].startswith("#")]
    if not lines:
        raise GraphFormatError("line 1: empty graph file")
    lineno, head = lines[0]
    if len(head) != 3 or head[2] not in ("U", "D"):
        raise GraphFormatError(f"line {lineno}: expected 'n m U|D'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphFormatError(f"line {lineno}: n and m must be integers") from None
    if n < 1 or m < 0:
        raise GraphFormatError(f"line {lineno}: need n >= 1 and m >= 0")
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else lineno)
        raise GraphFormatError(f"line {where}: expected {m} edge lines, found {len(body)}")
    u = np.empty(m, dtype=np.int64)
    v = np.empty(m, dtype=np.int64)
    w = np.empty(m, dtype=np.int64)
    for k, (i, toks) in enumerate(body):
        if len(toks) != 3:
            raise GraphFormatError(f"line {i}: expected 'u v w'")
        try:
            a, b, c = (int(t) for t in toks)
        except ValueError:
            raise GraphFormatError(f"line {i}: non-integer field") from None
        if not (1 <= a <= n and 1 <= b <= n):
            raise GraphFormatError(f"line {i}: endpoint outside 1..{n}")
        if a == b:
            raise GraphFormatError(f"line {i}: self-loop")
        u[k], v[k], w[k] = a - 1, b - 1, c
    try:
        return Graph(n, u, v, w, "dag" if head[2] == "D" else "undirected")
    except GraphError as exc:
        raise GraphFormatError(f"line {lineno}: {exc}") from None


def load(path):
    with open(path) as fh:
        return loads(fh.read())


def dumps(G):
    if G.kind == "directed":
        raise GraphError("only undirected and dag graphs have a text form")
    out = [f"{G.n} {G.m} {'D' if G.kind == 'dag' else 'U'}"]
    out += [f"{a + 1} {b + 1} {c}" for a, b, c in zip(G.u, G.v, G.w)]
    return "\n".join(out) + "\n"


def dump(G, path):
    with open(path, "w") as fh:
        fh.write(dumps(G))
