"""Classic Fréchet distance: decision by free-space propagation, and bisection."""

from __future__ import annotations

import itertools
from typing import Callable, NamedTuple

from .geom import (
    EMPTY,
    Disk,
    ParamInterval,
    PolygonalCurve,
    Segment,
    disk_segment_intersection,
    dist,
    tolerance,
)

__all__ = [
    "FrechetDecision",
    "segment_frechet",
    "decide_frechet",
    "bisect_frechet",
    "decide_segment_curve",
    "bisect_decider",
    "vertex_distance_bound",
]

MAX_BISECT_ITERS = 64


class FrechetDecision(NamedTuple):
    feasible: bool

    def __bool__(self) -> bool:
        return self.feasible


def segment_frechet(s1: Segment, s2: Segment) -> float:
    """Fréchet distance of two segments: the larger endpoint distance."""
    return max(dist(s1.a, s2.a), dist(s1.b, s2.b))


def _free(center, seg: Segment, r: float) -> ParamInterval:
    return disk_segment_intersection(Disk(center, r), seg)


def decide_frechet(T: PolygonalCurve, B: PolygonalCurve, delta: float) -> FrechetDecision:
    """Decide ``d_F(T, B) <= delta`` by cell-wise reachability propagation.

    Columns follow the edges of ``T``, rows the edges of ``B``.  Reachable
    parts of the cell sides are kept in local ``[0, 1]`` coordinates.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    r = delta + tolerance(delta)
    tv, bv = T.vertices, B.vertices
    n1, n2 = len(tv) - 1, len(bv) - 1
    if dist(tv[0], bv[0]) > r or dist(tv[-1], bv[-1]) > r:
        return FrechetDecision(False)
    tedges = [Segment(tv[i], tv[i + 1]) for i in range(n1)]
    bedges = [Segment(bv[j], bv[j + 1]) for j in range(n2)]

    # bottom reach for the current row, one interval per column
    bottom = []
    run = True
    for i in range(n1):
        f = _free(bv[0], tedges[i], r)
        bottom.append(f if run and not f.empty and f.lo == 0.0 else EMPTY)
        run = run and not f.empty and f.lo == 0.0 and f.hi == 1.0
    left_run = True
    for j in range(n2):
        lf = _free(tv[0], bedges[j], r)
        left = lf if left_run and not lf.empty and lf.lo == 0.0 else EMPTY
        left_run = left_run and not lf.empty and lf.lo == 0.0 and lf.hi == 1.0
        top_row = []
        alive = not left.empty
        for i in range(n1):
            bot = bottom[i]
            if bot.empty and left.empty:
                top_row.append(EMPTY)
                continue
            alive = True
            rf = _free(tv[i + 1], bedges[j], r)
            tf = _free(bv[j + 1], tedges[i], r)
            if not bot.empty:
                right = rf
            elif not left.empty and not rf.empty:
                right = rf.intersect(ParamInterval(left.lo, 1.0))
            else:
                right = EMPTY
            if not left.empty:
                top = tf
            elif not bot.empty and not tf.empty:
                top = tf.intersect(ParamInterval(bot.lo, 1.0))
            else:
                top = EMPTY
            top_row.append(top)
            left = right
        if not alive:
            return FrechetDecision(False)
        bottom = top_row
    return FrechetDecision(not left.empty and left.hi >= 1.0)


def vertex_distance_bound(T: PolygonalCurve, B: PolygonalCurve) -> float:
    """Largest vertex-to-vertex distance; bounds every pointwise distance."""
    return max(dist(p, q) for p, q in itertools.product(T.vertices, B.vertices))


def bisect_decider(decide: Callable[[float], bool], hi: float, tol: float) -> float:
    """Smallest feasible value up to ``tol`` for a monotone decision."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    lo = 0.0
    if decide(lo):
        return lo
    if not decide(hi):
        # the bound is a true upper bound, so this only happens at tolerance scale
        hi = hi * (1 + 1e-9) + 1e-12
    for _ in range(MAX_BISECT_ITERS):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if decide(mid):
            hi = mid
        else:
            lo = mid
    return hi


def bisect_frechet(T: PolygonalCurve, B: PolygonalCurve, tol: float) -> float:
    return bisect_decider(lambda d: decide_frechet(T, B, d).feasible, vertex_distance_bound(T, B), tol)


def decide_segment_curve(s: Segment, C, delta: float) -> bool:
    """Decide ``d_F(s, C) <= delta`` for a segment ``s`` and a curve ``C``.

    Endpoints must match within ``delta`` and ``s`` must stab the disks around
    the interior vertices of ``C`` in order (non-decreasing positions).
    """
    r = delta + tolerance(delta)
    vs = C.vertices if isinstance(C, PolygonalCurve) else list(C)
    if dist(s.a, vs[0]) > r or dist(s.b, vs[-1]) > r:
        return False
    pos = 0.0
    for v in vs[1:-1]:
        iv = disk_segment_intersection(Disk(v, r), s)
        if iv.empty or iv.hi < pos:
            return False
        pos = max(pos, iv.lo)
    return True
