"""Elementary-step instrumentation.

Kernels always return the number of loop iterations they performed; the
counter only records them while enabled, either through ``REPATH_STEP_COUNT=1``
or inside :func:`counting`.
"""
import os
from collections import Counter
from contextlib import contextmanager

_enabled = os.environ.get("REPATH_STEP_COUNT", "") == "1"
_counts = Counter()


def enabled():
    return _enabled


def add(name, n):
    if _enabled:
        _counts[name] += int(n)


def total(prefix=""):
    return sum(v for k, v in _counts.items() if k.startswith(prefix))


def snapshot():
    return dict(_counts)


def reset():
    _counts.clear()


@contextmanager
def counting():
    """Enable counting for the block and yield the live counter (reset on entry)."""
    global _enabled
    prev = _enabled
    _enabled = True
    _counts.clear()
    try:
        yield _counts
    finally:
        _enabled = prev


@contextmanager
def paused():
    """Stop recording for the block (used around oracle recomputation)."""
    global _enabled
    prev = _enabled
    _enabled = False
    try:
        yield
    finally:
        _enabled = prev
