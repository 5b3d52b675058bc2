import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortcut_frechet.freespace import (
    EMPTY_REACH,
    Block,
    Cell,
    CellFreeSpace,
    EmptyRegion,
    cell_boundary_intervals,
    compute_gates,
    quadrant_closure,
    reach_of_blocks,
    step1_neighbors,
)
from shortcut_frechet.geom import EMPTY, ParamInterval, PolygonalCurve, Segment, tolerance

T1 = PolygonalCurve([(0, 0), (2, 0)])
B1 = PolygonalCurve([(0, 1), (2, 1)])


def test_boundary_intervals_tangent():
    left, right, bottom, top = cell_boundary_intervals(T1, B1, Cell(0, 0), 1.0)
    assert bottom.lo == pytest.approx(0, abs=1e-4) and bottom.hi == pytest.approx(0, abs=1e-4)


def test_boundary_intervals_sqrt2():
    _, _, bottom, _ = cell_boundary_intervals(T1, B1, Cell(0, 0), math.sqrt(2))
    assert bottom.lo == pytest.approx(0, abs=1e-9) and bottom.hi == pytest.approx(0.5)


def test_boundary_intervals_far():
    far = PolygonalCurve([(100, 100), (101, 100)])
    assert all(iv.empty for iv in cell_boundary_intervals(T1, far, Cell(0, 0), 1.0))


def _fs(te, be, delta):
    return CellFreeSpace(Segment(*te), Segment(*be), delta + tolerance(delta))


def test_step1_whole_cell():
    fs = _fs(((0, 0), (1, 0)), ((0, 0), (1, 0)), 5.0)
    blocks = step1_neighbors(fs, ParamInterval(0.0, 1.0), EMPTY)
    rs = quadrant_closure(blocks, [], [], fs)
    assert rs.top == ParamInterval(0.0, 1.0) and rs.right == ParamInterval(0.0, 1.0)
    assert rs.gate_left == (0.0, 0.0)
    assert rs.gate_right.x == 1.0


def test_step1_empty():
    fs = _fs(((0, 0), (1, 0)), ((0, 0), (1, 0)), 5.0)
    assert step1_neighbors(fs, EMPTY, EMPTY) == []
    assert quadrant_closure([], [], [], fs) == EMPTY_REACH


def test_gates_of_single_point():
    # tangent configuration: free space is the single point (0.5, 0.5)
    fs = CellFreeSpace(Segment((0, 0), (2, 0)), Segment((1, 1), (1, 3)), 1.0)
    gl, gr = compute_gates([Block(0.0, 0.0, 1.0)], fs)
    assert gl.x == pytest.approx(0.5, abs=1e-6) and gr.x == pytest.approx(0.5, abs=1e-6)
    assert gl.y == pytest.approx(0.0, abs=1e-6)


def test_gates_symmetric():
    # crossing segments: free space symmetric about the cell centre
    fs = _fs(((-1, 0), (1, 0)), ((0, -1), (0, 1)), 0.5)
    gl, gr = compute_gates([Block(0.0, 0.0, 1.0)], fs)
    assert gl.x + gr.x == pytest.approx(1.0, abs=1e-9)
    assert gl.y == pytest.approx(gr.y, abs=1e-9)


def test_gates_empty_region():
    fs = _fs(((0, 0), (1, 0)), ((0, 5), (1, 5)), 1.0)
    with pytest.raises(EmptyRegion):
        compute_gates([Block(0.0, 0.0, 1.0)], fs)


def _random_fs(rng):
    te = ((rng.uniform(-2, 2), rng.uniform(-2, 2)), (rng.uniform(-2, 2), rng.uniform(-2, 2)))
    be = ((rng.uniform(-2, 2), rng.uniform(-2, 2)), (rng.uniform(-2, 2), rng.uniform(-2, 2)))
    return _fs(te, be, rng.uniform(0.3, 2.0))


def _free_grid(fs, k):
    s = np.linspace(0, 1, k)
    (ax, ay), (bx, by) = fs.te
    (cx, cy), (dx, dy) = fs.be
    px, py = ax + s * (bx - ax), ay + s * (by - ay)
    qx, qy = cx + s * (dx - cx), cy + s * (dy - cy)
    # rows t, columns s
    d2 = (px[None, :] - qx[:, None]) ** 2 + (py[None, :] - qy[:, None]) ** 2
    return s, d2 <= fs.r**2


def test_block_gates_vs_sampling():
    rng = random.Random(21)
    k = 401
    checked = 0
    for _ in range(150):
        fs = _random_fs(rng)
        if fs.empty:
            continue
        y0, y1 = sorted((rng.random(), rng.random()))
        blk = Block(rng.random() * 0.7, y0, y1)
        s, free = _free_grid(fs, k)
        mask = free & (s[None, :] >= blk.x0) & (s[:, None] >= y0) & (s[:, None] <= y1)
        got_l, got_r = fs.block_extreme(blk, True), fs.block_extreme(blk, False)
        if not mask.any():
            continue
        checked += 1
        cols = np.nonzero(mask.any(axis=0))[0]
        h = 2.0 / (k - 1)
        assert got_l is not None and got_r is not None
        assert abs(got_l.x - s[cols[0]]) <= h + 1e-6
        assert abs(got_r.x - s[cols[-1]]) <= h + 1e-6
        assert fs.contains(got_l.x, got_l.y, 1e-7) and fs.contains(got_r.x, got_r.y, 1e-7)
    assert checked > 50


def test_bottom_reach_vs_monotone_sampling():
    """Top interval reached from a bottom entry, against grid reachability."""
    rng = random.Random(22)
    k = 301
    h = 1.0 / (k - 1)
    checked = 0
    for _ in range(120):
        fs = _random_fs(rng)
        bottom = fs.hs(0.0)
        top_free = fs.hs(1.0)
        if bottom.empty or top_free.empty:
            continue
        rs = reach_of_blocks(step1_neighbors(fs, bottom, EMPTY), fs)
        s, free = _free_grid(fs, k)
        reach = np.zeros_like(free)
        reach[0] = free[0]
        for r in range(k):
            if r:
                reach[r] = free[r] & reach[r - 1]
            # sweep right within the row
            row = reach[r]
            for c in range(1, k):
                if free[r, c] and row[c - 1]:
                    row[c] = True
        top = np.nonzero(reach[-1])[0]
        if len(top) == 0:
            assert rs.top.empty or rs.top.hi - rs.top.lo < 3 * h
            continue
        checked += 1
        assert abs(rs.top.lo - s[top[0]]) <= 3 * h
        assert abs(rs.top.hi - s[top[-1]]) <= 3 * h
    assert checked > 20


@settings(max_examples=150)
@given(
    st.tuples(*[st.floats(-3, 3)] * 4),
    st.tuples(*[st.floats(-3, 3)] * 4),
    st.floats(0.05, 3),
    st.floats(0, 2),
)
def test_boundary_nesting_in_delta(te, be, d1, extra):
    a, b = Segment((te[0], te[1]), (te[2], te[3])), Segment((be[0], be[1]), (be[2], be[3]))
    if a.length == 0 or b.length == 0:
        return
    f1 = CellFreeSpace(a, b, d1).boundary()
    f2 = CellFreeSpace(a, b, d1 + extra).boundary()
    for i1, i2 in zip(f1, f2):
        if not i1.empty:
            assert not i2.empty and i2.lo <= i1.lo + 1e-9 and i1.hi <= i2.hi + 1e-9


def test_reach_subset_of_boundary():
    rng = random.Random(23)
    for _ in range(200):
        fs = _random_fs(rng)
        blocks = step1_neighbors(fs, fs.hs(0.0), fs.vt(0.0))
        rs = reach_of_blocks(blocks, fs)
        _, right, _, top = fs.boundary()
        if not rs.top.empty:
            assert top.lo - 1e-12 <= rs.top.lo and rs.top.hi <= top.hi + 1e-12
        if not rs.right.empty:
            assert right.lo - 1e-12 <= rs.right.lo and rs.right.hi <= right.hi + 1e-12
        for g in (rs.gate_left, rs.gate_right):
            if g is not None:
                assert 0 <= g.x <= 1 and 0 <= g.y <= 1
                assert fs.contains(g.x, g.y, 1e-9)
