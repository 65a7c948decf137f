"""Graph kernels over CSR adjacency (``indptr``, ``head``, ``arc_w``, ``arc_e``).

Distances are int64 with ``INF`` for unreachable nodes.  Each kernel returns
its step count alongside the result.
"""
import numpy as np

from .._accel import jit

INF = np.iinfo(np.int64).max


@jit
def dijkstra(indptr, head, arc_w, n, src):
    dist = np.full(n, INF, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    cap = head.shape[0] + 1
    hk = np.empty(cap, dtype=np.int64)
    hv = np.empty(cap, dtype=np.int64)
    size = 0
    dist[src] = 0
    hk[0] = 0
    hv[0] = src
    size = 1
    work = 0
    while size > 0:
        d = hk[0]
        x = hv[0]
        size -= 1
        # sift the last element down from the root
        k = hk[size]
        v = hv[size]
        pos = 0
        while True:
            ch = 2 * pos + 1
            if ch >= size:
                break
            if ch + 1 < size and hk[ch + 1] < hk[ch]:
                ch += 1
            if hk[ch] >= k:
                break
            hk[pos] = hk[ch]
            hv[pos] = hv[ch]
            pos = ch
            work += 1
        hk[pos] = k
        hv[pos] = v
        work += 1
        if done[x] or d > dist[x]:
            continue
        done[x] = True
        for t in range(indptr[x], indptr[x + 1]):
            y = head[t]
            nd = d + arc_w[t]
            work += 1
            if nd < dist[y]:
                dist[y] = nd
                pos = size
                size += 1
                while pos > 0:
                    par = (pos - 1) // 2
                    if hk[par] <= nd:
                        break
                    hk[pos] = hk[par]
                    hv[pos] = hv[par]
                    pos = par
                    work += 1
                hk[pos] = nd
                hv[pos] = y
    return dist, work


@jit
def topo_order(indptr, head, n):
    """Kahn's in-degree peeling; the returned count is ``< n`` on a cycle."""
    indeg = np.zeros(n, dtype=np.int64)
    for t in range(head.shape[0]):
        indeg[head[t]] += 1
    order = np.empty(n, dtype=np.int64)
    tail = 0
    for v in range(n):
        if indeg[v] == 0:
            order[tail] = v
            tail += 1
    front = 0
    while front < tail:
        x = order[front]
        front += 1
        for t in range(indptr[x], indptr[x + 1]):
            y = head[t]
            indeg[y] -= 1
            if indeg[y] == 0:
                order[tail] = y
                tail += 1
    return order, tail, n + head.shape[0]


@jit
def dag_relax(order, indptr, head, arc_w, n, src):
    dist = np.full(n, INF, dtype=np.int64)
    dist[src] = 0
    for k in range(n):
        x = order[k]
        if dist[x] == INF:
            continue
        for t in range(indptr[x], indptr[x + 1]):
            nd = dist[x] + arc_w[t]
            if nd < dist[head[t]]:
                dist[head[t]] = nd
    return dist, n + head.shape[0]


@jit
def tight_tree(indptr, head, arc_w, arc_e, dist, seeds, seed_edge, seed_parent):
    """Shortest-paths tree over tight arcs, grown breadth-first from ``seeds``.

    Seeds are taken as already attached through ``seed_edge``/``seed_parent``
    (``-1`` for the root), which is how a given path is forced into the tree.
    Returns parent edge, parent node, and the discovery order.
    """
    n = dist.shape[0]
    pe = np.full(n, -1, dtype=np.int64)
    pn = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    tail = 0
    for k in range(seeds.shape[0]):
        v = seeds[k]
        seen[v] = True
        pe[v] = seed_edge[k]
        pn[v] = seed_parent[k]
        order[tail] = v
        tail += 1
    front = 0
    work = 0
    while front < tail:
        x = order[front]
        front += 1
        dx = dist[x]
        for t in range(indptr[x], indptr[x + 1]):
            y = head[t]
            work += 1
            if not seen[y] and dist[y] != INF and dx + arc_w[t] == dist[y]:
                seen[y] = True
                pe[y] = arc_e[t]
                pn[y] = x
                order[tail] = y
                tail += 1
    return pe, pn, order[:tail], work + n


@jit
def path_levels(order, parent, path_nodes, n):
    lam = np.full(n, -1, dtype=np.int64)
    for i in range(path_nodes.shape[0]):
        lam[path_nodes[i]] = i
    for k in range(order.shape[0]):
        v = order[k]
        if lam[v] == -1 and parent[v] >= 0:
            lam[v] = lam[parent[v]]
    return lam, n + order.shape[0]


@jit
def edge_columns(eu, ev, ew, both_ways, lam, dist_r, dist_s):
    """One column per edge: rows ``lam(x)+1 .. lam(y)`` at cost d(r,x)+w+d(y,s)."""
    m = eu.shape[0]
    a = np.ones(m, dtype=np.int64)
    b = np.ones(m, dtype=np.int64)
    c = np.full(m, INF, dtype=np.int64)
    for e in range(m):
        x = eu[e]
        y = ev[e]
        if both_ways and lam[y] < lam[x]:
            x, y = y, x
        if lam[x] < 0 or lam[x] >= lam[y]:
            continue
        if dist_r[x] == INF or dist_s[y] == INF:
            continue
        a[e] = lam[x] + 1
        b[e] = lam[y]
        c[e] = dist_r[x] + ew[e] + dist_s[y]
    return a, b, c, m


@jit
def mark_path_dummies(c, path_edges):
    for i in range(path_edges.shape[0]):
        c[path_edges[i]] = INF
    return path_edges.shape[0]


@jit
def hub_weights(eu, ev, ew, both_ways, lam, path_nodes, dist_r, p):
    """Cheapest entry ``d(r,u) + w(ux)`` into each ``x`` of ``V_i`` from ``R_i``."""
    n = lam.shape[0]
    hw = np.full(n, INF, dtype=np.int64)
    he = np.full(n, -1, dtype=np.int64)
    hu = np.full(n, -1, dtype=np.int64)
    m = eu.shape[0]
    for e in range(m):
        for side in range(2 if both_ways else 1):
            u = eu[e]
            x = ev[e]
            if side == 1:
                u, x = x, u
            i = lam[x]
            if i < 1 or i > p - 1 or x == path_nodes[i] or lam[u] < 0 or lam[u] >= i:
                continue
            cand = dist_r[u] + ew[e]
            if cand < hw[x] or (cand == hw[x] and e < he[x]):
                hw[x] = cand
                he[x] = e
                hu[x] = u
    return hw, he, hu, 2 * m + n


@jit
def inner_edges(eu, ev, lam, path_nodes, p):
    """Edges of ``G[V_i]``: both ends on level ``i`` and neither is ``v_i``."""
    m = eu.shape[0]
    keep = np.zeros(m, dtype=np.bool_)
    for e in range(m):
        i = lam[eu[e]]
        if i >= 1 and i <= p - 1 and lam[ev[e]] == i \
                and eu[e] != path_nodes[i] and ev[e] != path_nodes[i]:
            keep[e] = True
    return keep, m


@jit
def node_columns(eu, ev, ew, both_ways, lam, path_nodes, d0, dist_r, dist_s, p):
    """2-concise columns over rows ``1..p-1``.

    Slot 0 is the singleton row ``lam(x)`` priced through the hub graph; slot 1
    covers rows ``lam(x)+1 .. lam(y)-1`` at the ordinary detour cost.
    """
    m = eu.shape[0]
    a = np.ones((m, 2), dtype=np.int64)
    b = np.ones((m, 2), dtype=np.int64)
    c = np.full((m, 2), INF, dtype=np.int64)
    for e in range(m):
        x = eu[e]
        y = ev[e]
        if both_ways and lam[y] < lam[x]:
            x, y = y, x
        if lam[x] < 0 or lam[x] >= lam[y] or dist_s[y] == INF:
            continue
        lx = lam[x]
        ly = lam[y]
        if 1 <= lx and lx <= p - 1 and x != path_nodes[lx] and d0[x] != INF:
            a[e, 0] = lx
            b[e, 0] = lx
            c[e, 0] = d0[x] + ew[e] + dist_s[y]
        if lx + 1 <= ly - 1 and dist_r[x] != INF:
            a[e, 1] = lx + 1
            b[e, 1] = ly - 1
            c[e, 1] = dist_r[x] + ew[e] + dist_s[y]
    return a, b, c, m
