"""Row-minima kernels over interval columns.

Every kernel takes parallel int64 arrays ``a, b, c, idx`` (1-based rows,
value, original column index) and merges into caller-owned ``out_v, out_i``
(0-based rows).  Entries are compared as ``(value, idx)`` pairs so every
minimum has a unique witness: the smallest column index among ties.
Each kernel returns the number of elementary steps it executed.
"""
import numpy as np

from .._accel import jit

INF = np.iinfo(np.int64).max


@jit
def lt(v1, i1, v2, i2):
    return v1 < v2 or (v1 == v2 and i1 < i2)


@jit
def _stable_by(key, order, n):
    m = order.shape[0]
    start = np.zeros(n + 2, dtype=np.int64)
    for t in range(m):
        start[key[order[t]] + 1] += 1
    for r in range(1, n + 2):
        start[r] += start[r - 1]
    out = np.empty(m, dtype=np.int64)
    for t in range(m):
        j = order[t]
        out[start[key[j]]] = j
        start[key[j]] += 1
    return out


@jit
def counting_sort_ab(a, b, n):
    """Permutation putting ``(a, b)`` pairs in lexicographic order, stably."""
    m = a.shape[0]
    order = np.arange(m)
    order = _stable_by(b, order, n)
    order = _stable_by(a, order, n)
    return order, 2 * (2 * m + n)


@jit
def distinct_count(key, n):
    seen = np.zeros(n + 2, dtype=np.bool_)
    count = 0
    for t in range(key.shape[0]):
        if not seen[key[t]]:
            seen[key[t]] = True
            count += 1
    return count, key.shape[0] + n


@jit
def merge_min(out_v, out_i, v, i):
    for r in range(out_v.shape[0]):
        if lt(v[r], i[r], out_v[r], out_i[r]):
            out_v[r] = v[r]
            out_i[r] = i[r]
    return out_v.shape[0]


@jit
def expand_minima(a, b, c, idx, out_v, out_i):
    """Brute force: visit every finite entry."""
    work = 0
    for j in range(a.shape[0]):
        if c[j] == INF:
            continue
        for r in range(a[j] - 1, b[j]):
            if lt(c[j], idx[j], out_v[r], out_i[r]):
                out_v[r] = c[j]
                out_i[r] = idx[j]
        work += b[j] - a[j] + 2
    return work


@jit
def thick_minima(a, b, c, idx, out_v, out_i):
    """Row minima of a sorted matrix grouped by start row.

    Within a group sharing ``a``, columns are ordered by ``b``; walking rows
    bottom-up while absorbing columns right-to-left traces the lower-left
    boundary, so the group costs its column count plus its height.
    """
    m = a.shape[0]
    work = 0
    j = 0
    while j < m:
        g = j
        while g < m and a[g] == a[j]:
            g += 1
        best_v = INF
        best_i = INF
        t = g - 1
        for row in range(b[g - 1], a[j] - 1, -1):
            while t >= j and b[t] >= row:
                if lt(c[t], idx[t], best_v, best_i):
                    best_v = c[t]
                    best_i = idx[t]
                t -= 1
                work += 1
            r = row - 1
            if lt(best_v, best_i, out_v[r], out_i[r]):
                out_v[r] = best_v
                out_i[r] = best_i
            work += 1
        j = g
    return work


@jit
def kappa_scan(a, b, hs):
    """Brush class of every column of a sorted matrix.

    ``hs[k]`` is the k-th brush factor (``hs[ell] == 1``).  Column ``j`` gets
    the smallest ``k >= 1`` with ``[a, b]`` containing a multiple of
    ``hs[k]``.  Inside a start-row group the class never increases, so each
    scan resumes from the previous column's class.
    """
    m = a.shape[0]
    ell = hs.shape[0] - 1
    label = np.empty(m, dtype=np.int64)
    work = 0
    k = ell
    for j in range(m):
        if j == 0 or a[j] != a[j - 1]:
            k = ell
            work += 1
        while k > 1 and (b[j] // hs[k - 1]) * hs[k - 1] >= a[j]:
            k -= 1
            work += 1
        label[j] = k
        work += 1
    return label, work


@jit
def expand_condensed(v, i, h, out_v, out_i):
    """Merge minima of condensed row ``t`` into rows ``(t-1)h+1 .. th``."""
    n = out_v.shape[0]
    for t in range(v.shape[0]):
        if v[t] == INF:
            continue
        lo = t * h
        hi = min(lo + h, n)
        for r in range(lo, hi):
            if lt(v[t], i[t], out_v[r], out_i[r]):
                out_v[r] = v[t]
                out_i[r] = i[t]
    return n + v.shape[0]


@jit
def shallow_run(a, b, c, idx, lo, hi, offset, hrows, table, qv, qi, debug, mu_v, mu_i):
    """Process columns ``lo..hi-1`` of a sorted shallow matrix.

    Rows are local (global row minus ``offset``) in ``1..hrows``; ``qv, qi``
    must have room for positions ``0..hrows+1``.  Returns the final bit
    string ``z`` and the step count; minima are read as ``q[pred(z, i)]``.
    With ``debug`` set, ``mu_v, mu_i`` track plain running minima and the
    representation is checked against them after every column.
    """
    qv[0] = INF
    qi[0] = INF
    z = 1
    work = 1
    if debug:
        for r in range(hrows + 2):
            mu_v[r] = INF
            mu_i[r] = INF
    for j in range(lo, hi):
        cj = c[j]
        xj = idx[j]
        i0 = a[j] - offset
        i2 = b[j] - offset + 1
        i1 = table[z, i2 - 1]
        work += 1
        if lt(cj, xj, qv[i1], qi[i1]):
            if (z >> i2) & 1 == 0:
                z |= 1 << i2
                qv[i2] = qv[i1]
                qi[i2] = qi[i1]
            while i0 <= i1 and lt(cj, xj, qv[i1], qi[i1]):
                z &= ~(1 << i1)
                i2 = i1
                i1 = table[z, i2 - 1]
                work += 1
            if lt(cj, xj, qv[i1], qi[i1]):
                z |= 1 << i0
                qv[i0] = cj
                qi[i0] = xj
            if lt(qv[i1], qi[i1], cj, xj):
                z |= 1 << i2
                qv[i2] = cj
                qi[i2] = xj
        if debug:
            for r in range(a[j] - offset, b[j] - offset + 1):
                if lt(cj, xj, mu_v[r], mu_i[r]):
                    mu_v[r] = cj
                    mu_i[r] = xj
            for r in range(1, hrows + 1):
                p = table[z, r]
                if qv[p] != mu_v[r] or qi[p] != mu_i[r]:
                    raise AssertionError("q[pred(z, i)] diverged from the running row minimum")
    return z, work


@jit
def shallow_blocks(a, b, c, idx, h, table, out_v, out_i):
    """Row minima of sorted columns that contain no multiple of ``h``.

    Such a column lies strictly inside one block ``(k-1)h < a <= b < kh``;
    each block is an ``(h-1)``-row matrix solved with one shared table.
    """
    n = out_v.shape[0]
    m = a.shape[0]
    qv = np.empty(h + 2, dtype=np.int64)
    qi = np.empty(h + 2, dtype=np.int64)
    dummy = np.empty(0, dtype=np.int64)
    work = 0
    j = 0
    while j < m:
        blk = a[j] // h
        g = j
        while g < m and a[g] // h == blk:
            g += 1
        offset = blk * h
        z, w = shallow_run(a, b, c, idx, j, g, offset, h - 1, table, qv, qi,
                           False, dummy, dummy)
        work += w
        for r in range(1, h):
            row = offset + r
            if row > n:
                break
            p = table[z, r]
            if lt(qv[p], qi[p], out_v[row - 1], out_i[row - 1]):
                out_v[row - 1] = qv[p]
                out_i[row - 1] = qi[p]
            work += 1
        j = g
    return work
