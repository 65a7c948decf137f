import pytest
from hypothesis import given, strategies as st

from repath import pred_structure as ps


@pytest.mark.parametrize("n,h", [(1, 1), (2, 1), (4, 1), (5, 2), (16, 2), (17, 3), (256, 3),
                                 (257, 4), (65536, 4), (65537, 5)])
def test_brush_factor(n, h):
    assert ps.brush_factor(n) == h


def test_brush_factor_rejects_zero():
    with pytest.raises(ValueError):
        ps.brush_factor(0)


@pytest.mark.parametrize("n", [2, 100, 70000])
def test_table_exhaustive(n):
    t = ps.build(n)
    assert t.bits == t.h + 2
    for z in range(1 << t.bits):
        for i in range(t.bits):
            assert ps.pred(t, z, i) == ps.scan_pred(z, i)


def test_pred_out_of_range():
    t = ps.build(16)
    with pytest.raises(IndexError):
        ps.pred(t, 0, t.bits)
    with pytest.raises(IndexError):
        ps.pred(t, 0, -1)


def test_empty_string_has_no_predecessor():
    t = ps.build(16)
    assert ps.pred(t, 0, t.bits - 1) == ps.NONE


@given(st.integers(0, 63), st.integers(0, 5))
def test_set_then_clear_roundtrip(z, i):
    z2 = ps.set_bit(z, i, bits=6)
    assert (z2 >> i) & 1
    assert ps.clear_bit(z2, i, bits=6) == z & ~(1 << i)


def test_bit_ops_range_checked():
    with pytest.raises(IndexError):
        ps.set_bit(0, 6, bits=6)
    with pytest.raises(IndexError):
        ps.clear_bit(0, -1)
