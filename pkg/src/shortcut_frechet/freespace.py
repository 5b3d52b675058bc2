"""Free space of one cell and the constant-size reachable-set summary.

A cell ``(i, j)`` pairs edge ``i`` of ``T`` (x axis) with edge ``j`` of ``B``
(y axis).  Inside the cell we use local coordinates ``(s, t)`` in ``[0, 1]^2``.
The free space is convex, so every query we need reduces to a quadratic along
an axis-parallel line or to a segment/hippodrome intersection.

Reachable regions are unions of *blocks* ``F ∩ {s >= x0, y0 <= t <= y1}``.
Every set the decider builds (neighbour entries, tunnel landings and their
upper-right quadrant closures) has that shape.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .geom import (
    EMPTY,
    Disk,
    ParamInterval,
    Point,
    PolygonalCurve,
    Segment,
    disk_segment_intersection,
    dist,
    segment_hippodrome_interval,
    tolerance,
)

__all__ = [
    "Cell",
    "CellFreeSpace",
    "Block",
    "ReachSet",
    "EmptyRegion",
    "EMPTY_REACH",
    "cell_boundary_intervals",
    "step1_neighbors",
    "quadrant_closure",
    "compute_gates",
]

_EPS = 1e-12


class EmptyRegion(ValueError):
    pass


class Cell(NamedTuple):
    i: int
    j: int


class Block(NamedTuple):
    """``F ∩ {s >= x0, y0 <= t <= y1}``; ``tag``/``src`` record provenance."""

    x0: float
    y0: float
    y1: float
    tag: str = ""
    src: object = None


class ReachSet(NamedTuple):
    top: ParamInterval
    right: ParamInterval
    gate_left: Optional[Point]
    gate_right: Optional[Point]

    @property
    def empty(self) -> bool:
        return self.gate_left is None


EMPTY_REACH = ReachSet(EMPTY, EMPTY, None, None)


def _proj(p: Point, s: Segment) -> float:
    vx, vy = s.b[0] - s.a[0], s.b[1] - s.a[1]
    vv = vx * vx + vy * vy
    if vv == 0.0:
        return 0.0
    t = ((p[0] - s.a[0]) * vx + (p[1] - s.a[1]) * vy) / vv
    return min(1.0, max(0.0, t))


class CellFreeSpace:
    """Free space ``{(s, t) : |T_i(s) - B_j(t)| <= r}`` of one cell.

    ``r`` is used as given; callers add the comparison tolerance.
    """

    __slots__ = ("te", "be", "r", "s_range", "t_range", "cell")

    def __init__(self, te: Segment, be: Segment, r: float, cell: Cell = Cell(0, 0)):
        self.te, self.be, self.r, self.cell = te, be, r, cell
        self.s_range = segment_hippodrome_interval(te, be, r)
        self.t_range = segment_hippodrome_interval(be, te, r) if not self.s_range.empty else EMPTY

    @classmethod
    def of(cls, T: PolygonalCurve, B: PolygonalCurve, i: int, j: int, r: float) -> "CellFreeSpace":
        return cls(T.edge(i), B.edge(j), r, Cell(i, j))

    @property
    def empty(self) -> bool:
        return self.s_range.empty or self.t_range.empty

    def hs(self, t: float) -> ParamInterval:
        """Free ``s`` values on the horizontal line at height ``t``."""
        return disk_segment_intersection(Disk(self.be.at(t), self.r), self.te)

    def vt(self, s: float) -> ParamInterval:
        """Free ``t`` values on the vertical line at ``s``."""
        return disk_segment_intersection(Disk(self.te.at(s), self.r), self.be)

    def contains(self, s: float, t: float, slack: float = 0.0) -> bool:
        return dist(self.te.at(s), self.be.at(t)) <= self.r + slack + tolerance(self.r) * 1e-3

    def boundary(self):
        """Free intervals on the left, right, bottom and top sides."""
        return self.vt(0.0), self.vt(1.0), self.hs(0.0), self.hs(1.0)

    # extremal points -------------------------------------------------------

    def _argset_t(self, s: float) -> ParamInterval:
        iv = self.vt(s)
        if iv.empty:
            t = _proj(self.te.at(s), self.be)
            return ParamInterval(t, t)
        return iv

    def _row(self, t: float, left: bool) -> float:
        iv = self.hs(t)
        if iv.empty:
            return _proj(self.be.at(t), self.te)
        return iv.lo if left else iv.hi

    def band_extreme(self, y0: float, y1: float, left: bool) -> Optional[Point]:
        """Min-x (``left``) or max-x point of ``F`` within ``y0 <= t <= y1``.

        Ties on x go to the smaller t.  ``None`` if the band misses ``F``.
        """
        if self.empty:
            return None
        a, b = max(y0, self.t_range.lo), min(y1, self.t_range.hi)
        if a > b:
            return None
        s_star = self.s_range.lo if left else self.s_range.hi
        arg = self._argset_t(s_star)
        if arg.hi >= a and arg.lo <= b:
            return Point(s_star, max(a, arg.lo))
        t = a if arg.hi < a else b
        s = self._row(t, left)
        # the row extreme is unique off the argmin set, but report the lowest t on that column
        col = self.vt(s).intersect(ParamInterval(a, b))
        return Point(s, col.lo if not col.empty else t)

    def block_extreme(self, blk: Block, left: bool) -> Optional[Point]:
        lo_pt = self.band_extreme(blk.y0, blk.y1, True)
        if lo_pt is None:
            return None
        hi_pt = self.band_extreme(blk.y0, blk.y1, False)
        if hi_pt.x < blk.x0 - _EPS:
            return None
        if not left:
            return hi_pt
        if lo_pt.x >= blk.x0:
            return lo_pt
        col = self.vt(blk.x0).intersect(ParamInterval(blk.y0, blk.y1))
        return Point(blk.x0, col.lo if not col.empty else hi_pt.y)

    def block_contains(self, blk: Block, s: float, t: float, eps: float = 1e-9) -> bool:
        return s >= blk.x0 - eps and blk.y0 - eps <= t <= blk.y1 + eps and self.contains(s, t, eps)


def cell_boundary_intervals(T: PolygonalCurve, B: PolygonalCurve, cell: Cell, delta: float):
    """(left, right, bottom, top) free intervals of ``cell`` at distance ``delta``."""
    r = delta + tolerance(delta)
    return CellFreeSpace.of(T, B, cell[0], cell[1], r).boundary()


def step1_neighbors(fs: CellFreeSpace, bottom: ParamInterval, left: ParamInterval) -> list[Block]:
    """Blocks reachable directly from the bottom and left neighbours."""
    out = []
    if not bottom.empty:
        out.append(Block(bottom.lo, 0.0, 1.0, "bottom"))
    if not left.empty:
        out.append(Block(0.0, left.lo, 1.0, "left"))
    return out


def _better(p: Optional[Point], q: Optional[Point], left: bool) -> Optional[Point]:
    if p is None:
        return q
    if q is None:
        return p
    if p.x != q.x:
        return p if (p.x < q.x) == left else q
    return p if p.y <= q.y else q


def compute_gates(blocks, fs: CellFreeSpace):
    """(gate_left, gate_right) of the union of ``blocks``; raises if empty."""
    gl = gr = None
    for blk in blocks:
        gl = _better(gl, fs.block_extreme(blk, True), True)
        gr = _better(gr, fs.block_extreme(blk, False), False)
    if gl is None:
        raise EmptyRegion("region has no free point")
    return gl, gr


def quadrant_closure(P1, P2, P3, fs: CellFreeSpace) -> ReachSet:
    """ReachSet of ``Q(P1 ∪ P2 ∪ P3) ∩ F`` with each ``Pk`` a list of blocks."""
    blocks = [b for part in (P1, P2, P3) if part for b in part]
    return reach_of_blocks(blocks, fs)


def reach_of_blocks(blocks, fs: CellFreeSpace) -> ReachSet:
    if not blocks or fs.empty:
        return EMPTY_REACH
    try:
        gl, gr = compute_gates(blocks, fs)
    except EmptyRegion:
        return EMPTY_REACH
    top_free, right_free = fs.hs(1.0), fs.vt(1.0)
    top, right = EMPTY, EMPTY
    for blk in blocks:
        if blk.y1 >= 1.0 and not top_free.empty:
            top = top.hull(top_free.intersect(ParamInterval(blk.x0, 1.0)))
        if blk.x0 <= 1.0 and not right_free.empty:
            right = right.hull(right_free.intersect(ParamInterval(blk.y0, blk.y1)))
    return ReachSet(top, right, gl, gr)
