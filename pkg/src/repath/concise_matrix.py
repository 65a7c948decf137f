"""Concise and k-concise matrices in interval form.

A column of a concise matrix is one triple ``(a, b, c)``: rows ``a..b``
(1-based, inclusive) hold the value ``c`` and every other row is infinite.
A k-concise column holds up to ``k`` disjoint, increasing triples.  Values are
int64 with ``INF`` (the int64 maximum) reserved for "no entry".
"""
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

INF = np.iinfo(np.int64).max
NO_WITNESS = -1


class MatrixFormatError(ValueError):
    pass


def _as_i64(x):
    return np.ascontiguousarray(np.asarray(x, dtype=np.int64))


@dataclass(frozen=True, eq=False)
class ConciseMatrix:
    n_rows: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    column_ids: Sequence[Any] = None

    def __post_init__(self):
        a, b, c = _as_i64(self.a), _as_i64(self.b), _as_i64(self.c)
        if not (a.ndim == b.ndim == c.ndim == 1 and len(a) == len(b) == len(c)):
            raise ValueError("a, b, c must be 1-d arrays of equal length")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        ids = list(range(len(a))) if self.column_ids is None else list(self.column_ids)
        if len(ids) != len(a):
            raise ValueError("column_ids length mismatch")
        object.__setattr__(self, "column_ids", ids)
        if self.n_rows < 1:
            raise ValueError("n_rows must be positive")
        live = c != INF
        if np.any((a[live] < 1) | (a[live] > b[live]) | (b[live] > self.n_rows)):
            raise ValueError("finite column interval outside 1 <= a <= b <= n_rows")

    @classmethod
    def from_columns(cls, n_rows, columns, column_ids=None):
        """Build from ``[(a, b, c), ...]``; ``c`` may be ``INF`` or ``float('inf')``."""
        cols = [(a, b, INF if c == float("inf") else c) for a, b, c in columns]
        if not cols:
            return cls(n_rows, [], [], [], column_ids)
        a, b, c = zip(*cols)
        return cls(n_rows, a, b, c, column_ids)

    @property
    def m(self):
        return len(self.a)

    @property
    def columns(self):
        return [(int(a), int(b), int(c)) for a, b, c in zip(self.a, self.b, self.c)]

    def live(self):
        """Mask of non-dummy columns."""
        return self.c != INF

    def entry(self, i, j):
        return int(self.c[j]) if self.a[j] <= i <= self.b[j] else INF

    def drop_dummies(self):
        keep = np.flatnonzero(self.live())
        return self.take(keep)

    def take(self, cols):
        cols = np.asarray(cols, dtype=np.int64)
        return ConciseMatrix(
            self.n_rows, self.a[cols], self.b[cols], self.c[cols],
            [self.column_ids[j] for j in cols],
        )

    def dense(self):
        out = np.full((self.n_rows, self.m), INF, dtype=np.int64)
        for j in np.flatnonzero(self.live()):
            out[self.a[j] - 1:self.b[j], j] = self.c[j]
        return out

    def to_k(self):
        return KConciseMatrix(
            self.n_rows, self.a[:, None], self.b[:, None], self.c[:, None],
            np.ones(self.m, dtype=np.int64), self.column_ids,
        )


@dataclass(frozen=True, eq=False)
class KConciseMatrix:
    """Columns of up to ``k`` intervals, stored as ``(m, k)`` arrays.

    ``counts[j]`` is the number of stored triples for column ``j``; slots past
    it are padding (``c == INF``).  Stored triples whose value is ``INF`` are
    kept (so text round-trips are exact) but carry no entries.
    """
    n_rows: int
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    counts: np.ndarray = None
    column_ids: Sequence[Any] = None

    def __post_init__(self):
        a, b, c = (_as_i64(x) for x in (self.a, self.b, self.c))
        if a.ndim == 1 and a.size == 0:
            a, b, c = (x.reshape(0, 1) for x in (a, b, c))
        if not (a.ndim == 2 and a.shape == b.shape == c.shape):
            raise ValueError("a, b, c must share shape (m, k)")
        m = a.shape[0]
        counts = (np.full(m, a.shape[1], dtype=np.int64) if self.counts is None
                  else _as_i64(self.counts))
        if counts.shape != (m,) or np.any(counts < 0) or np.any(counts > a.shape[1]):
            raise ValueError("counts must be in 0..k for every column")
        pad = np.arange(a.shape[1])[None, :] >= counts[:, None]
        c = np.where(pad, INF, c)
        for name, val in (("a", a), ("b", b), ("c", c), ("counts", counts)):
            object.__setattr__(self, name, val)
        ids = list(range(m)) if self.column_ids is None else list(self.column_ids)
        if len(ids) != m:
            raise ValueError("column_ids length mismatch")
        object.__setattr__(self, "column_ids", ids)
        if self.n_rows < 1:
            raise ValueError("n_rows must be positive")
        self._validate()

    def _validate(self):
        n = self.n_rows
        last = np.zeros(self.m, dtype=np.int64)
        for t in range(self.a.shape[1]):
            live = self.c[:, t] != INF
            a, b = self.a[live, t], self.b[live, t]
            bad = (a < 1) | (a > b) | (b > n)
            if bad.any():
                j = np.flatnonzero(live)[np.argmax(bad)]
                raise ValueError(f"column {j}: interval ({self.a[j, t]}, {self.b[j, t]}) outside 1..{n}")
            clash = a <= last[live]
            if clash.any():
                j = np.flatnonzero(live)[np.argmax(clash)]
                raise ValueError(f"column {j}: intervals overlap or are unordered")
            last[live] = b

    @classmethod
    def from_columns(cls, n_rows, columns, column_ids=None):
        """Build from ``[[(a, b, c), ...], ...]``."""
        m = len(columns)
        k = max((len(col) for col in columns), default=1) or 1
        a = np.zeros((m, k), dtype=np.int64)
        b = np.zeros((m, k), dtype=np.int64)
        c = np.full((m, k), INF, dtype=np.int64)
        counts = np.zeros(m, dtype=np.int64)
        for j, col in enumerate(columns):
            counts[j] = len(col)
            for t, (aa, bb, cc) in enumerate(col):
                a[j, t], b[j, t] = aa, bb
                c[j, t] = INF if cc == float("inf") else cc
        return cls(n_rows, a, b, c, counts, column_ids)

    @property
    def m(self):
        return self.a.shape[0]

    @property
    def k(self):
        """Largest number of finite intervals in any column (0 if all dummy)."""
        if self.m == 0:
            return 0
        return int((self.c != INF).sum(axis=1).max())

    @property
    def columns(self):
        return [
            [(int(self.a[j, t]), int(self.b[j, t]), int(self.c[j, t]))
             for t in range(self.counts[j])]
            for j in range(self.m)
        ]

    def entry(self, i, j):
        for t in range(self.counts[j]):
            if self.c[j, t] != INF and self.a[j, t] <= i <= self.b[j, t]:
                return int(self.c[j, t])
        return INF

    def dense(self):
        out = np.full((self.n_rows, self.m), INF, dtype=np.int64)
        for j in range(self.m):
            for t in range(self.counts[j]):
                if self.c[j, t] != INF:
                    out[self.a[j, t] - 1:self.b[j, t], j] = self.c[j, t]
        return out


def as_k_concise(M):
    return M.to_k() if isinstance(M, ConciseMatrix) else M


@dataclass(frozen=True, eq=False)
class MinimaResult:
    values: np.ndarray     # int64, INF for dummy rows
    witnesses: np.ndarray  # int64 column index, NO_WITNESS for dummy rows

    def __iter__(self):
        return iter((self.values, self.witnesses))

    def witness(self, i):
        """Witness column for 1-based row ``i`` or ``None``."""
        w = int(self.witnesses[i - 1])
        return None if w == NO_WITNESS else w

    def tolist(self):
        return [None if v == INF else int(v) for v in self.values]


def decompose_k_concise(N):
    """Split a k-concise matrix into concise matrices, one per interval slot.

    Matrix ``t`` holds the ``t``-th finite interval of every column that has at
    least ``t`` of them; the entry-wise minimum of the outputs is ``N``.
    """
    N = as_k_concise(N)
    live = N.c != INF
    k = N.k
    if k == 0:
        return [ConciseMatrix(N.n_rows, np.ones(N.m), np.ones(N.m),
                              np.full(N.m, INF), N.column_ids)]
    # rank of each live slot among the live slots of its column
    rank = np.cumsum(live, axis=1) - 1
    out = []
    rows = np.arange(N.m)
    for t in range(k):
        sel = live & (rank == t)
        has = sel.any(axis=1)
        slot = np.argmax(sel, axis=1)
        a = np.where(has, N.a[rows, slot], 1)
        b = np.where(has, N.b[rows, slot], 1)
        c = np.where(has, N.c[rows, slot], INF)
        out.append(ConciseMatrix(N.n_rows, a, b, c, N.column_ids))
    return out


def thickness(M):
    live = M.c != INF
    if not live.any():
        return 0
    return int((M.b[live] - M.a[live] + 1).max())


def broadness(M):
    live = M.c != INF
    if not live.any():
        return 0
    return int(min(np.unique(M.a[live]).size, np.unique(M.b[live]).size))


def is_brushed(a, b, h):
    """True iff ``[a, b]`` contains a multiple of ``h``."""
    if h < 1 or a < 1 or a > b:
        raise ValueError("need h >= 1 and 1 <= a <= b")
    return (b // h) * h >= a


# -- text format -------------------------------------------------------------
#
#   n m k
#   id t a1 b1 c1 ... at bt ct        (one line per column, c may be "inf")

def _fmt(v):
    return "inf" if v == INF else str(int(v))


def dumps(M):
    M = as_k_concise(M)
    k = M.a.shape[1]
    lines = [f"{M.n_rows} {M.m} {k}"]
    for j in range(M.m):
        parts = [str(M.column_ids[j]), str(int(M.counts[j]))]
        for t in range(M.counts[j]):
            parts += [str(int(M.a[j, t])), str(int(M.b[j, t])), _fmt(M.c[j, t])]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _parse_value(tok, lineno):
    if tok.lower() == "inf":
        return INF
    try:
        v = int(tok)
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: bad value {tok!r}") from None
    if not -INF <= v < INF:
        raise MatrixFormatError(f"line {lineno}: value {v} out of int64 range")
    return v


def loads(text):
    """Parse the matrix text format into a :class:`KConciseMatrix`."""
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1)
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise MatrixFormatError("line 1: empty matrix file")
    lineno, head = lines[0]
    try:
        n, m, k = (int(x) for x in head)
    except ValueError:
        raise MatrixFormatError(f"line {lineno}: expected 'n m k'") from None
    if len(lines) - 1 != m:
        raise MatrixFormatError(f"line {lineno}: header says {m} columns, found {len(lines) - 1}")
    cols, ids = [], []
    for lineno, toks in lines[1:]:
        if len(toks) < 2:
            raise MatrixFormatError(f"line {lineno}: expected 'id t ...'")
        try:
            t = int(toks[1])
        except ValueError:
            raise MatrixFormatError(f"line {lineno}: bad interval count {toks[1]!r}") from None
        if t < 0 or t > k or len(toks) != 2 + 3 * t:
            raise MatrixFormatError(f"line {lineno}: expected {t} triples (k={k})")
        col = []
        for s in range(t):
            a, b, c = toks[2 + 3 * s:5 + 3 * s]
            try:
                col.append((int(a), int(b), _parse_value(c, lineno)))
            except ValueError:
                raise MatrixFormatError(f"line {lineno}: bad interval bounds") from None
        ids.append(toks[0])
        cols.append(col)
    try:
        M = KConciseMatrix.from_columns(n, cols, ids)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from None
    if M.a.shape[1] < k and m:
        pad = k - M.a.shape[1]
        M = KConciseMatrix(
            n, np.pad(M.a, ((0, 0), (0, pad))), np.pad(M.b, ((0, 0), (0, pad))),
            np.pad(M.c, ((0, 0), (0, pad)), constant_values=INF), M.counts, ids,
        )
    return M


def load(path):
    with open(path) as fh:
        return loads(fh.read())


def dump(M, path):
    with open(path, "w") as fh:
        fh.write(dumps(M))


# The solvers live in ``rowmin``; re-exported here so the matrix API is in one place.
from .rowmin import (  # noqa: E402,F401
    BlockMap, brush_split, naive_row_minima, row_minima_linear, row_minima_near_linear,
    row_minima_shallow, row_minima_thick, sort_columns,
)
