"""Ordered line stabbing of disks from a fixed apex, and the two tunnel tests.

A :class:`Wedge` holds the set of points ``q`` such that the segment from the
apex to ``q`` meets the added disks in order (closed disks, non-decreasing
contact positions).  Directions are measured as angles relative to the
direction of the first disk that excludes the apex, so the feasible direction
set always lies in ``(-pi/2, pi/2)`` and never wraps.

For a direction ``phi`` a disk ``k`` occupies the ray positions
``[l_k(phi), h_k(phi)]``.  The ordered stabbing condition is
``max_{i<j} l_i <= h_j`` for every ``j``, and ``q`` is in the wedge when it
also lies beyond ``M(phi) = max_i l_i``.  The wedge keeps ``M`` as an upper
envelope of pieces ``(a, b, k)`` meaning ``M = l_k`` on ``[a, b]``.  All
breakpoints are directions to tangent points or to circle-circle
intersections, so between candidates a sign test at the midpoint suffices.
"""

from __future__ import annotations

import bisect
import copy
import math
from typing import Iterable, NamedTuple, Optional

from .freespace import Block, Cell, CellFreeSpace
from .geom import (
    EMPTY,
    Disk,
    ParamInterval,
    Point,
    PolygonalCurve,
    Segment,
    disk_segment_intersection,
    dist,
    tolerance,
)

__all__ = [
    "PrecondViolation",
    "Wedge",
    "wedge_new",
    "wedge_add_disk",
    "wedge_contains",
    "TunnelEndpoints",
    "diagonal_tunnel",
    "vertical_tunnel",
    "tunnel_disks",
]

ALL, NARROW, EMPTY_STATE = "AllContaining", "Narrowing", "Empty"
_ANG_EPS = 1e-12


class PrecondViolation(ValueError):
    pass


def _wrap(a: float) -> float:
    a = math.fmod(a, 2 * math.pi)
    if a <= -math.pi:
        a += 2 * math.pi
    elif a > math.pi:
        a -= 2 * math.pi
    return a


class _D(NamedTuple):
    cx: float
    cy: float
    r: float
    d: float  # apex-center distance
    psi: float  # relative direction to the center
    eta: float  # half-width of the hitting arc (pi when the apex is inside)
    inside: bool


class Wedge:
    """Line-stabbing wedge with a fixed apex."""

    def __init__(self, apex: Point):
        self.apex = Point(float(apex[0]), float(apex[1]))
        self.state = ALL
        self.theta0 = 0.0
        self.disks: list[_D] = []
        self.pieces: list[tuple[float, float, int]] = []
        self.ops = 0

    def copy(self) -> "Wedge":
        w = copy.copy(self)
        w.disks = list(self.disks)
        w.pieces = list(self.pieces)
        return w

    def __len__(self) -> int:
        return len(self.disks)

    # per-direction disk positions -------------------------------------------

    def _lh(self, k: int, phi: float) -> tuple[float, float]:
        D = self.disks[k]
        delta = phi - D.psi
        b = D.d * math.cos(delta)
        s = D.d * math.sin(delta)
        disc = D.r * D.r - s * s
        sq = math.sqrt(disc) if disc > 0 else 0.0
        return max(0.0, b - sq), b + sq

    def _circle_dirs(self, k1: int, k2: int, a: float, b: float) -> list[float]:
        D1, D2 = self.disks[k1], self.disks[k2]
        dx, dy = D2.cx - D1.cx, D2.cy - D1.cy
        d = math.hypot(dx, dy)
        if d == 0.0 or d > D1.r + D2.r or d < abs(D1.r - D2.r):
            return []
        m = (D1.r * D1.r - D2.r * D2.r + d * d) / (2 * d)
        h2 = D1.r * D1.r - m * m
        h = math.sqrt(h2) if h2 > 0 else 0.0
        mx, my = D1.cx + m * dx / d, D1.cy + m * dy / d
        out = []
        for sgn in (1.0, -1.0):
            px, py = mx - sgn * h * dy / d, my + sgn * h * dx / d
            vx, vy = px - self.apex.x, py - self.apex.y
            if vx == 0.0 and vy == 0.0:
                continue
            phi = _wrap(math.atan2(vy, vx) - self.theta0)
            if a < phi < b:
                out.append(phi)
        return out

    # construction -----------------------------------------------------------

    def add(self, disk: Disk) -> "Wedge":
        """Narrow the wedge by one more disk (in place); returns ``self``."""
        self.ops += 1
        if self.state == EMPTY_STATE:
            return self
        (cx, cy), r = disk
        vx, vy = cx - self.apex.x, cy - self.apex.y
        d = math.hypot(vx, vy)
        inside = d <= r
        if self.state == ALL:
            if inside:
                return self
            self.theta0 = math.atan2(vy, vx)
            self.state = NARROW
        psi = _wrap(math.atan2(vy, vx) - self.theta0) if d > 0 else 0.0
        eta = math.pi if inside else math.asin(r / d)
        k = len(self.disks)
        self.disks.append(_D(cx, cy, r, d, psi, eta, inside))
        if not self.pieces:
            self.pieces = [(-eta, eta, k)]
            return self

        new: list[tuple[float, float, int]] = []
        if inside:
            arcs = [(-math.inf, math.inf)]
        else:
            arcs = [(psi - eta + s, psi + eta + s) for s in (0.0, -2 * math.pi, 2 * math.pi)]
        for a, b, i in self.pieces:
            for lo, hi in arcs:
                a2, b2 = max(a, lo), min(b, hi)
                if a2 > b2:
                    continue
                cand = [a2, b2] + self._circle_dirs(i, k, a2, b2)
                cand.sort()
                self.ops += len(cand)
                if a2 == b2:
                    spans = [(a2, b2)]
                else:
                    spans = [(u, v) for u, v in zip(cand, cand[1:]) if v > u]
                for u, v in spans:
                    mid = 0.5 * (u + v)
                    li, _ = self._lh(i, mid)
                    lj, hj = self._lh(k, mid)
                    if hj < li - 1e-12 * max(1.0, li):
                        continue
                    dom = k if lj > li else i
                    if new and new[-1][2] == dom and new[-1][1] >= u:
                        new[-1] = (new[-1][0], v, dom)
                    else:
                        new.append((u, v, dom))
        self.pieces = new
        if not new:
            self.state = EMPTY_STATE
        return self

    def extend(self, disks: Iterable[Disk]) -> "Wedge":
        for dk in disks:
            self.add(dk)
        return self

    # queries ------------------------------------------------------------------

    def direction_intervals(self) -> list[tuple[float, float]]:
        out: list[tuple[float, float]] = []
        for a, b, _ in self.pieces:
            if out and out[-1][1] >= a - _ANG_EPS:
                out[-1] = (out[-1][0], max(out[-1][1], b))
            else:
                out.append((a, b))
        return out

    def contains(self, q) -> bool:
        if self.state == ALL:
            return True
        if self.state == EMPTY_STATE:
            return False
        vx, vy = q[0] - self.apex.x, q[1] - self.apex.y
        L = math.hypot(vx, vy)
        if L == 0.0:
            return False
        phi = _wrap(math.atan2(vy, vx) - self.theta0)
        starts = [p[0] for p in self.pieces]
        idx = bisect.bisect_right(starts, phi + _ANG_EPS) - 1
        best = None
        for cand in (idx, idx + 1):
            if 0 <= cand < len(self.pieces):
                a, b, k = self.pieces[cand]
                if a - _ANG_EPS <= phi <= b + _ANG_EPS:
                    l, _ = self._lh(k, min(max(phi, a), b))
                    best = l if best is None else min(best, l)
        if best is None:
            return False
        return best <= L + tolerance(L) * 1e-3

    def segment_pieces(self, seg: Segment) -> list[ParamInterval]:
        """Parameters ``t`` of ``seg`` whose points lie in the wedge."""
        if self.state == ALL:
            return [ParamInterval(0.0, 1.0)]
        if self.state == EMPTY_STATE:
            return []
        ax, ay = seg.a[0] - self.apex.x, seg.a[1] - self.apex.y
        vx, vy = seg.b[0] - seg.a[0], seg.b[1] - seg.a[1]
        scale = max(1.0, math.hypot(ax, ay), math.hypot(vx, vy))
        eps = 1e-12 * scale
        found: list[ParamInterval] = []
        for a, b, k in self.pieces:
            ua = (math.cos(self.theta0 + a), math.sin(self.theta0 + a))
            ub = (math.cos(self.theta0 + b), math.sin(self.theta0 + b))
            um = (math.cos(self.theta0 + 0.5 * (a + b)), math.sin(self.theta0 + 0.5 * (a + b)))
            cone = _linear_range(
                [
                    (ua[0] * ay - ua[1] * ax, ua[0] * vy - ua[1] * vx),  # cross(ua, q) >= 0
                    (ax * ub[1] - ay * ub[0], vx * ub[1] - vy * ub[0]),  # cross(q, ub) >= 0
                    (ax * um[0] + ay * um[1], vx * um[0] + vy * um[1]),  # in front
                ],
                eps,
            )
            if cone.empty:
                continue
            D = self.disks[k]
            # beyond the near arc: past the tangent chord, or inside the disk
            wx, wy = (D.cx - self.apex.x) / D.d, (D.cy - self.apex.y) / D.d
            chord = (D.d * D.d - D.r * D.r) / D.d
            beyond = _linear_range([(ax * wx + ay * wy - chord, vx * wx + vy * wy)], eps)
            indisk = disk_segment_intersection(Disk(Point(D.cx, D.cy), D.r), seg)
            for part in (beyond, indisk):
                got = cone.intersect(part)
                if not got.empty:
                    found.append(got)
        found.sort()
        merged: list[ParamInterval] = []
        for iv in found:
            if merged and merged[-1].hi >= iv.lo - 1e-12:
                merged[-1] = ParamInterval(merged[-1].lo, max(merged[-1].hi, iv.hi))
            else:
                merged.append(iv)
        return merged

    def segment_slab(self, seg: Segment) -> ParamInterval:
        """Hull of :meth:`segment_pieces` (the pieces form one interval)."""
        out = EMPTY
        for iv in self.segment_pieces(seg):
            out = out.hull(iv)
        return out


def _linear_range(constraints, eps: float) -> ParamInterval:
    """``t`` in ``[0, 1]`` with ``c0 + c1 t >= -eps`` for every ``(c0, c1)``."""
    lo, hi = 0.0, 1.0
    for c0, c1 in constraints:
        if c1 == 0.0:
            if c0 < -eps:
                return EMPTY
            continue
        t = (-eps - c0) / c1
        if c1 > 0:
            lo = max(lo, t)
        else:
            hi = min(hi, t)
        if lo > hi:
            return EMPTY
    return ParamInterval(lo, hi)


def wedge_new(origin: Point, disks: Iterable[Disk]) -> Wedge:
    return Wedge(origin).extend(disks)


def wedge_add_disk(w: Wedge, d: Disk) -> Wedge:
    """Functional variant of :meth:`Wedge.add`; ``w`` is left untouched."""
    return w.copy().add(d)


def wedge_contains(w: Wedge, q: Point) -> bool:
    return w.contains(q)


# ---------------------------------------------------------------------------
# tunnels


class TunnelEndpoints(NamedTuple):
    cell: Cell
    slab: ParamInterval  # y-range on the B-edge, local coordinates
    clipped: ParamInterval  # slab restricted to rows meeting the free space
    fs: CellFreeSpace

    def contains(self, s: float, t: float) -> bool:
        return t in self.slab and self.fs.contains(s, t)


def tunnel_disks(T: PolygonalCurve, x_p: float, i: int, r: float) -> list[Disk]:
    """Disks at the T-vertices strictly after ``x_p`` up to vertex ``i``."""
    return [Disk(T.vertices[v], r) for v in range(math.floor(x_p) + 1, i + 1)]


def _check_start(T, B, p, cell, r):
    x_p, y_p = p
    if x_p > cell[0] + 1e-12 or y_p > cell[1] + 1e-12:
        raise PrecondViolation(f"start {p} not in the lower-left quadrant of {cell}")
    if dist(T.at_grid(x_p), B.at_grid(y_p)) > r + 1e-9 * max(1.0, r):
        raise PrecondViolation(f"start {p} is not in the free space")


def diagonal_tunnel(T: PolygonalCurve, B: PolygonalCurve, p, cell, delta: float, wedge: Optional[Wedge] = None) -> TunnelEndpoints:
    """Tunnel landings in ``cell`` from ``p`` (global grid coordinates).

    Landings ``q`` with a shortcut ``B(y_p) B(y_q)`` of price ``<= delta`` are
    exactly the free points whose height lies in the returned slab.  A
    prebuilt ``wedge`` for the same apex and disks may be supplied.
    """
    cell = Cell(*cell)
    r = delta + tolerance(delta)
    _check_start(T, B, p, cell, r)
    fs = CellFreeSpace.of(T, B, cell.i, cell.j, r)
    if wedge is None:
        wedge = wedge_new(B.at_grid(p[1]), tunnel_disks(T, p[0], cell.i, r))
    slab = wedge.segment_slab(B.edge(cell.j))
    clipped = slab.intersect(fs.t_range) if not fs.empty else EMPTY
    return TunnelEndpoints(cell, slab, clipped, fs)


def vertical_tunnel(T: PolygonalCurve, B: PolygonalCurve, p, cell, delta: float):
    """Block of ``cell`` reachable by a vertical tunnel from ``p`` below it."""
    cell = Cell(*cell)
    if not (cell.i - 1e-12 <= p[0] <= cell.i + 1 + 1e-12) or p[1] > cell.j + 1e-12:
        raise PrecondViolation(f"start {p} is not below {cell} in the same column")
    r = delta + tolerance(delta)
    fs = CellFreeSpace.of(T, B, cell.i, cell.j, r)
    x0 = min(1.0, max(0.0, p[0] - cell.i))
    blk = Block(x0, 0.0, 1.0, "vertical", p)
    return [blk] if fs.block_extreme(blk, True) is not None else []
