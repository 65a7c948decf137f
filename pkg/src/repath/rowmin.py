"""Row minima of concise matrices.

The linear-time driver :func:`row_minima_linear` composes the pieces below:
sorting by counting sort, the boundary walk for thin matrices, the brush
split that condenses tall columns, the ``O(m + n log log n)`` layered solver,
and the table-driven solver for matrices of ``O(log log n)`` rows.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import steps
from ._kernels import matrix as K
from .concise_matrix import (
    INF, NO_WITNESS, ConciseMatrix, MinimaResult, as_k_concise, decompose_k_concise,
)
from .pred_structure import brush_factor
from .pred_structure import build as build_table


@dataclass(frozen=True)
class _Cols:
    """Columns as raw arrays; ``idx`` carries the caller's column index."""
    n: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    idx: np.ndarray

    @property
    def m(self):
        return self.a.shape[0]

    def take(self, sel):
        return _Cols(self.n, self.a[sel], self.b[sel], self.c[sel], self.idx[sel])


def _cols(M):
    return _Cols(M.n_rows, M.a, M.b, M.c, np.arange(M.m, dtype=np.int64))


def _blank(n):
    return np.full(n, INF, dtype=np.int64), np.full(n, INF, dtype=np.int64)


def _result(v, i):
    i = np.where(v == INF, NO_WITNESS, i)
    return MinimaResult(v, i)


# -- sorting -----------------------------------------------------------------

def _sorted(X):
    """Drop dummy columns and order by ``(a, b)``."""
    X = X.take(X.c != INF)
    perm, work = K.counting_sort_ab(X.a, X.b, X.n)
    steps.add("sort", work)
    return X.take(perm)


def sort_columns(M):
    """Reorder columns so ``(a, b)`` is lexicographically non-decreasing.

    Dummy columns are dropped.  Two stable counting-sort passes, ``O(n + m)``.
    """
    keep = np.flatnonzero(M.c != INF)
    sub = M.take(keep)
    perm, work = K.counting_sort_ab(sub.a, sub.b, M.n_rows)
    steps.add("sort", work)
    return sub.take(perm)


# -- brute force ---------------------------------------------------------------

def naive_row_minima(M, chunk_rows=None):
    """Reference answer by expanding every entry of a (k-)concise matrix."""
    N = as_k_concise(M)
    n, m = N.n_rows, N.m
    values = np.full(n, INF, dtype=np.int64)
    witnesses = np.full(n, NO_WITNESS, dtype=np.int64)
    if m == 0:
        return MinimaResult(values, witnesses)
    chunk_rows = chunk_rows or max(1, 4_000_000 // max(m, 1))
    live = N.c != INF
    for lo in range(0, n, chunk_rows):
        rows = np.arange(lo + 1, min(lo + chunk_rows, n) + 1)[:, None]
        dense = np.full((rows.shape[0], m), INF, dtype=np.int64)
        for t in range(N.a.shape[1]):
            inside = live[:, t] & (N.a[:, t] <= rows) & (rows <= N.b[:, t])
            dense = np.where(inside, N.c[:, t], dense)
        # argmin returns the first (smallest) column among ties
        arg = dense.argmin(axis=1)
        val = dense[np.arange(rows.shape[0]), arg]
        values[lo:lo + rows.shape[0]] = val
        witnesses[lo:lo + rows.shape[0]] = np.where(val == INF, NO_WITNESS, arg)
    return MinimaResult(values, witnesses)


def _expand(X, out_v, out_i):
    steps.add("expand", K.expand_minima(X.a, X.b, X.c, X.idx, out_v, out_i))


# -- thickness x broadness -------------------------------------------------------

def _thick_into(X, out_v, out_i):
    """Merge the row minima of ``X`` into ``out`` in O(n + m + thickness*broadness)."""
    X = X.take(X.c != INF)
    if X.m == 0:
        return
    n_starts, w1 = K.distinct_count(X.a, X.n)
    n_ends, w2 = K.distinct_count(X.b, X.n)
    steps.add("thick", w1 + w2)
    if n_ends < n_starts:
        # fewer distinct end rows: solve the row-reversed matrix
        R = _Cols(X.n, X.n + 1 - X.b, X.n + 1 - X.a, X.c, X.idx)
        R = _sorted(R)
        rv, ri = _blank(X.n)
        steps.add("thick", K.thick_minima(R.a, R.b, R.c, R.idx, rv, ri))
        steps.add("thick", K.merge_min(out_v, out_i, rv[::-1].copy(), ri[::-1].copy()))
    else:
        S = _sorted(X)
        steps.add("thick", K.thick_minima(S.a, S.b, S.c, S.idx, out_v, out_i))


def _parts(M):
    """Concise pieces of ``M``; a k-concise input is split slot by slot."""
    if isinstance(M, ConciseMatrix):
        return [M]
    return decompose_k_concise(M)


def row_minima_thick(M):
    v, i = _blank(M.n_rows)
    for part in _parts(M):
        _thick_into(_cols(part), v, i)
    return _result(v, i)


# -- brush split -------------------------------------------------------------------

@dataclass(frozen=True)
class BlockMap:
    """Condensed row ``t`` (1-based) stands for rows ``(t-1)h+1 .. th``."""
    h: int
    n_rows: int

    def rows(self, t):
        return range((t - 1) * self.h + 1, min(t * self.h, self.n_rows) + 1)

    def expand(self, values):
        """Per-row values from per-condensed-row values (INF past the last block)."""
        out = np.full(self.n_rows, INF, dtype=np.int64)
        full = len(values) * self.h
        out[:full] = np.repeat(np.asarray(values, dtype=np.int64), self.h)
        return out


def _split(X, h):
    """Split h-brushed columns into head, condensed middle, and tail pieces."""
    up = ((X.a + h - 1) // h) * h
    down = (X.b // h) * h
    head = _Cols(X.n, X.a, up, X.c, X.idx)
    mid = up + 1 <= down
    star = _Cols(X.n // h, up[mid] // h + 1, down[mid] // h, X.c[mid], X.idx[mid])
    tail = down + 1 <= X.b
    last = _Cols(X.n, down[tail] + 1, X.b[tail], X.c[tail], X.idx[tail])
    steps.add("split", X.m)
    return head, star, last


def brush_split(M, h):
    """Head / condensed-middle / tail decomposition of an all-h-brushed matrix.

    Returns ``(M1, Mstar, M3, block_map)``.  Empty pieces are dropped, so the
    three matrices carry only the columns (and ``column_ids``) that survive.
    """
    if h < 1:
        raise ValueError("h must be positive")
    keep = np.flatnonzero(M.c != INF)
    X = _cols(M).take(keep)
    bad = (X.b // h) * h < X.a
    if bad.any():
        j = int(X.idx[np.argmax(bad)])
        raise ValueError(f"column {M.column_ids[j]!r} is not {h}-brushed")
    head, star, last = _split(X, h)

    def wrap(Y, n):
        return ConciseMatrix(max(n, 1), Y.a, Y.b, Y.c, [M.column_ids[j] for j in Y.idx])

    return wrap(head, M.n_rows), wrap(star, M.n_rows // h), wrap(last, M.n_rows), \
        BlockMap(h, M.n_rows)


def _solve_brushed(X, h, out_v, out_i, star_solver):
    head, star, last = _split(X, h)
    _thick_into(head, out_v, out_i)
    _thick_into(last, out_v, out_i)
    if star.m and star.n >= 1:
        sv, si = _blank(star.n)
        star_solver(star, sv, si)
        steps.add("split", K.expand_condensed(sv, si, h, out_v, out_i))


# -- O(m + n log log n) -----------------------------------------------------------

def layer_factors(n):
    """``ell`` and the brush factors ``h_0 > h_1 > ... > h_ell = 1`` for ``n >= 2``."""
    t = 0
    while (1 << (1 << t)) < n:
        t += 1
    ell = 1 + t
    # h_0 is never consulted; clamp it so it fits in int64 for any n
    hs = [min(1 << (1 << (ell - k - 1)), 1 << 62) for k in range(ell)] + [1]
    return ell, np.array(hs, dtype=np.int64)


def layer_partition(M):
    """Brush class ``k`` (1..ell) of each non-dummy column, in sorted column order.

    Returns ``(sorted_matrix, labels, hs)``.
    """
    S = sort_columns(M)
    _, hs = layer_factors(max(M.n_rows, 2))
    labels, work = K.kappa_scan(S.a, S.b, hs)
    steps.add("near_linear", work)
    return S, labels, hs


def _near_linear_into(X, out_v, out_i):
    n = X.n
    X = _sorted(X)
    if X.m == 0:
        return
    if n < 4:
        _expand(X, out_v, out_i)
        return
    ell, hs = layer_factors(n)
    labels, work = K.kappa_scan(X.a, X.b, hs)
    steps.add("near_linear", work)
    for k in range(1, ell + 1):
        part = X.take(labels == k)
        steps.add("near_linear", X.m)
        if part.m:
            _solve_brushed(part, int(hs[k]), out_v, out_i, _thick_into)


def row_minima_near_linear(M):
    v, i = _blank(M.n_rows)
    for part in _parts(M):
        _near_linear_into(_cols(part), v, i)
    return _result(v, i)


# -- shallow matrices, table driven ----------------------------------------------

def _check_table(n_rows, table):
    if n_rows > table.max_rows:
        raise ValueError(f"{n_rows} rows exceed the table's {table.max_rows}-row budget")


def row_minima_shallow(M, table, debug=False):
    """Row minima of a matrix with at most ``table.max_rows`` rows in O(h + m).

    With ``debug`` the kernel also keeps explicit running minima and asserts
    after each column that ``q[pred(z, i)]`` equals them.
    """
    _check_table(M.n_rows, table)
    X = _sorted(_cols(M))
    h = M.n_rows
    qv, qi = _blank(h + 2)
    mu_v, mu_i = _blank(h + 2)
    z, work = K.shallow_run(X.a, X.b, X.c, X.idx, 0, X.m, 0, h, table.pred_of,
                            qv, qi, debug, mu_v, mu_i)
    steps.add("shallow", work)
    pos = table.pred_of[z, 1:h + 1]
    return _result(qv[pos].copy(), qi[pos].copy())


def shallow_state(M, table, n_columns):
    """``(q_values, z)`` after the first ``n_columns`` sorted columns.

    ``q_values`` has positions ``0..h+1``; entries whose bit in ``z`` is clear
    are stale and carry no meaning.
    """
    _check_table(M.n_rows, table)
    X = _sorted(_cols(M))
    h = M.n_rows
    qv, qi = _blank(h + 2)
    empty = np.empty(0, dtype=np.int64)
    z, _ = K.shallow_run(X.a, X.b, X.c, X.idx, 0, min(n_columns, X.m), 0, h,
                         table.pred_of, qv, qi, False, empty, empty)
    return qv, z


# -- O(n + m) --------------------------------------------------------------------

def _linear_concise_into(X, table, out_v, out_i):
    X = _sorted(X)
    if X.m == 0:
        return
    h = table.h
    brushed = (X.b // h) * h >= X.a
    steps.add("linear", X.m)
    if brushed.any():
        _solve_brushed(X.take(brushed), h, out_v, out_i, _near_linear_into)
    if not brushed.all():
        rest = X.take(~brushed)
        steps.add("linear", K.shallow_blocks(rest.a, rest.b, rest.c, rest.idx, h,
                                             table.pred_of, out_v, out_i))


@lru_cache(maxsize=None)
def _table_for_factor(h):
    # the smallest row count whose brush factor is h
    return build_table((1 << (1 << (h - 1))) + 1)


def table_for(n_rows):
    """Shared predecessor table for matrices with ``n_rows`` rows."""
    return _table_for_factor(brush_factor(n_rows))


def row_minima_linear(N, table=None):
    """Row minima of an O(1)-concise matrix in O(n + m).

    ``table`` may be shared across calls on matrices with the same row count.
    """
    N = as_k_concise(N)
    n = N.n_rows
    if table is None:
        table = table_for(n)
    elif table.h != brush_factor(n):
        raise ValueError("table was built for a different row count")
    v, i = _blank(n)
    for part in decompose_k_concise(N):
        _linear_concise_into(_cols(part), table, v, i)
    return _result(v, i)
