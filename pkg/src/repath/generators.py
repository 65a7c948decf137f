"""Seeded random graphs and matrices for tests and benchmarks."""
import numpy as np

from .concise_matrix import INF, ConciseMatrix, KConciseMatrix
from .graph import Graph


def erdos_renyi(n, m, rng, w_lo=1, w_hi=100, connected=True):
    """Undirected multigraph with ``m`` edges and weights in ``[w_lo, w_hi]``.

    With ``connected`` the first ``n - 1`` edges form a random spanning tree.
    """
    rng = np.random.default_rng(rng)
    u, v = [], []
    if connected and n > 1:
        perm = rng.permutation(n)
        parents = rng.integers(0, np.arange(1, n))
        u.append(perm[1:])
        v.append(perm[parents])
    k = m - sum(len(x) for x in u)
    if k > 0 and n > 1:
        a = rng.integers(0, n, k)
        b = (a + rng.integers(1, n, k)) % n
        u.append(a)
        v.append(b)
    u = np.concatenate(u) if u else np.empty(0, dtype=np.int64)
    v = np.concatenate(v) if v else np.empty(0, dtype=np.int64)
    w = rng.integers(w_lo, w_hi + 1, len(u))
    return Graph(n, u, v, w, "undirected")


def layered_dag(n, m, rng, w_lo=-50, w_hi=100, layers=None):
    """DAG on nodes ``0..n-1`` with arcs from lower to higher index.

    A backbone ``i -> i+1`` keeps node ``n-1`` reachable from ``0``; the other
    arcs jump forward by at most roughly one layer width.
    """
    rng = np.random.default_rng(rng)
    layers = layers or max(2, int(np.sqrt(n)))
    width = max(1, n // layers)
    u = [np.arange(n - 1)]
    v = [np.arange(1, n)]
    k = m - (n - 1)
    if k > 0 and n > 1:
        a = rng.integers(0, n - 1, k)
        b = np.minimum(n - 1, a + rng.integers(1, 2 * width + 1, k))
        u.append(a)
        v.append(b)
    u = np.concatenate(u)
    v = np.concatenate(v)
    w = rng.integers(w_lo, w_hi + 1, len(u))
    return Graph(n, u, v, w, "dag")


def random_k_concise(n, m, k, rng, lo=-10**6, hi=10**6, fill=0.9):
    """``n x m`` k-concise matrix with log-uniform interval lengths.

    Slot ``t`` starts after slot ``t-1`` ends; slots that would start past
    row ``n`` (or lose the ``fill`` coin flip) stay empty.
    """
    rng = np.random.default_rng(rng)
    a = np.ones((m, k), dtype=np.int64)
    b = np.ones((m, k), dtype=np.int64)
    c = np.full((m, k), INF, dtype=np.int64)
    last = np.zeros(m, dtype=np.int64)
    span = max(1, n // k)
    for t in range(k):
        start = last + rng.integers(1, span + 1, m)
        length = np.floor(np.exp(rng.uniform(0, np.log(n + 1), m))).astype(np.int64)
        end = np.minimum(n, start + np.maximum(length, 1) - 1)
        ok = (start <= n) & (rng.random(m) < fill)
        a[ok, t] = start[ok]
        b[ok, t] = end[ok]
        c[ok, t] = rng.integers(lo, hi + 1, int(ok.sum()))
        last = np.where(ok, end, last)
    return KConciseMatrix(n, a, b, c)


def random_concise(n, m, rng, lo=-10**6, hi=10**6, fill=1.0):
    N = random_k_concise(n, m, 1, rng, lo, hi, fill)
    return ConciseMatrix(n, N.a[:, 0], N.b[:, 0], N.c[:, 0])
