"""Exact decider for the vertex-restricted shortcut Fréchet distance.

Shortcuts join two vertices of ``B``.  The sweep runs column by column
(edges of ``T``), and within a column upward through the rows.  A cell
``(i, j)`` can have its top side reached by a shortcut ``B_h -> B_{j+1}``
in two ways:

* the start lies on line ``h`` inside the same column: only the endpoints
  matter, so the leftmost reachable start in this column is best;
* the start lies in an earlier column: the rightmost reachable point on line
  ``h`` left of the column gives the shortest subcurve of ``T``, and a shorter
  subcurve never hurts.  One reverse wedge from ``B_{j+1}`` answers all such
  ``h`` for the cell, with queries bucketed by the column of their start.

A feasible shortcut makes the whole free part of the top side reachable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .classic import bisect_decider, vertex_distance_bound
from .freespace import CellFreeSpace
from .geom import EMPTY, Disk, ParamInterval, PolygonalCurve, Segment, disk_segment_intersection, dist, tolerance
from .stabbing import Wedge

__all__ = ["VertexStats", "decide_vertex", "bisect_vertex"]


@dataclass
class VertexStats:
    cells: int = 0
    wedge_disks: int = 0
    wedge_ops: int = 0
    queries: int = 0


def decide_vertex(T: PolygonalCurve, B: PolygonalCurve, delta: float, stats: Optional[VertexStats] = None) -> bool:
    """True iff some vertex-restricted shortcut curve of ``B`` is within ``delta`` of ``T``."""
    if delta < 0:
        raise ValueError("delta must be non-negative")
    stats = stats if stats is not None else VertexStats()
    r = delta + tolerance(delta)
    tv, bv = T.vertices, B.vertices
    n1, n2 = len(tv) - 1, len(bv) - 1
    if dist(tv[0], bv[0]) > r or dist(tv[-1], bv[-1]) > r:
        return False

    # rp[h]: rightmost reachable x on line y = h with x <= current column start
    rp: list[Optional[float]] = [None] * n2
    right_prev = [EMPTY] * n2  # right reach of cells in the previous column
    line0_open = True  # bottom line reachable from (0, 0) so far
    last_right = EMPTY
    last_top = EMPTY
    for i in range(n1):
        te = Segment(tv[i], tv[i + 1])
        # reach along y = 0 inside column i
        f = disk_segment_intersection(Disk(bv[0], r), te)
        bottom = f if line0_open and not f.empty and f.lo == 0.0 else EMPTY
        line0_open = line0_open and not f.empty and f.lo == 0.0 and f.hi == 1.0
        line_reach = [EMPTY] * n2  # reach on line h within this column
        line_reach[0] = bottom
        for j in range(n2):
            stats.cells += 1
            bot = line_reach[j]
            left = right_prev[j]
            fs = CellFreeSpace(te, Segment(bv[j], bv[j + 1]), r)
            rf, tf = fs.vt(1.0), fs.hs(1.0)
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
            if not tf.empty and top != tf:
                # same-column shortcut from a lower line (h < j)
                lower = _col_min_below(line_reach, j)
                if lower is not None:
                    top = top.hull(tf.intersect(ParamInterval(lower, 1.0)))
                if top != tf and _reverse_wedge_hit(T, B, i, j, r, rp, stats):
                    top = tf
            right_prev[j] = right
            if j + 1 < n2:
                line_reach[j + 1] = top
            if j == n2 - 1:
                last_top = top
            if i == n1 - 1 and j == n2 - 1:
                last_right = right
        for h in range(n2):
            if not line_reach[h].empty:
                rp[h] = i + line_reach[h].hi
    return last_right.contains_tol(1.0) or (n1 >= 1 and last_top.contains_tol(1.0))


def _col_min_below(line_reach, j) -> Optional[float]:
    best = None
    for h in range(j):
        iv = line_reach[h]
        if not iv.empty:
            best = iv.lo if best is None else min(best, iv.lo)
    return best


def _reverse_wedge_hit(T, B, i, j, r, rp, stats: VertexStats) -> bool:
    """Is some shortcut ``B_h -> B_{j+1}`` (``h < j``) from an earlier column feasible?"""
    starts = {}
    for h in range(j):
        x = rp[h]
        if x is not None and x <= i:
            starts.setdefault(math.floor(x), []).append(h)
    if not starts:
        return False
    tv, bv = T.vertices, B.vertices
    w = Wedge(bv[j + 1])
    lowest = min(starts)
    # after absorbing vertices i, i-1, ..., c+1 the wedge serves starts in column c
    for c in range(i, lowest - 1, -1):
        if c < i:
            w.add(Disk(tv[c + 1], r))
            stats.wedge_disks += 1
            if w.state == "Empty":
                break
        for h in starts.get(c, ()):
            stats.queries += 1
            if w.contains(bv[h]):
                stats.wedge_ops += w.ops
                return True
    stats.wedge_ops += w.ops
    return False


def bisect_vertex(T: PolygonalCurve, B: PolygonalCurve, tol: float) -> float:
    return bisect_decider(lambda d: decide_vertex(T, B, d), vertex_distance_bound(T, B), tol)
