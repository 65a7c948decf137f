"""Constant-time predecessor queries over short bit strings.

A bit string ``z`` of length ``L`` is encoded as an integer with position
``p`` stored in bit ``p``.  All answers ``pred(z, i)`` (largest set position
``<= i``) are tabulated up front, so a query is one array lookup and an
update is one bit operation.
"""
from dataclasses import dataclass

import numpy as np

from . import steps

NONE = -1


def brush_factor(n):
    """``max(1, ceil(log2(log2(n))))`` computed exactly on integers.

    ``ceil(log2 log2 n)`` is the smallest ``t >= 0`` with ``2**(2**t) >= n``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    t = 0
    while (1 << (1 << t)) < n:
        t += 1
    return max(1, t)


@dataclass(frozen=True)
class PredTable:
    h: int
    bits: int
    pred_of: np.ndarray  # shape (2**bits, bits), int64, NONE where no set bit

    @property
    def max_rows(self):
        return self.bits - 2

    def __len__(self):
        return self.pred_of.size


def build(n):
    """Table for strings of ``h + 2`` bits where ``h = brush_factor(n)``."""
    h = brush_factor(n)
    L = h + 2
    size = 1 << L
    table = np.empty((size, L), dtype=np.int64)
    # pred(z, 0) is 0 or NONE; pred(z, i) = i if bit i set else pred(z, i - 1)
    for z in range(size):
        prev = 0 if z & 1 else NONE
        table[z, 0] = prev
        for i in range(1, L):
            if (z >> i) & 1:
                prev = i
            table[z, i] = prev
    steps.add("pred_table.build", size * L)
    return PredTable(h=h, bits=L, pred_of=table)


def _check_pos(t, i):
    if not 0 <= i < t.bits:
        raise IndexError(f"position {i} outside 0..{t.bits - 1}")


def pred(t, z, i):
    _check_pos(t, i)
    return int(t.pred_of[z, i])


def set_bit(z, i, bits=None):
    if i < 0 or (bits is not None and i >= bits):
        raise IndexError(f"position {i} out of range")
    return z | (1 << i)


def clear_bit(z, i, bits=None):
    if i < 0 or (bits is not None and i >= bits):
        raise IndexError(f"position {i} out of range")
    return z & ~(1 << i)


def scan_pred(z, i):
    """Linear-scan reference for :func:`pred`."""
    while i >= 0:
        if (z >> i) & 1:
            return i
        i -= 1
    return NONE
