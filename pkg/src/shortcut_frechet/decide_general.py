"""3-approximate decider for the shortcut Fréchet distance (shortcuts on ``B``).

The sweep visits cells row by row.  Each cell receives

* ``P1``: what its bottom and left neighbours hand over,
* ``P2``: a vertical tunnel from the leftmost gate seen in its column,
* ``P3``: a diagonal tunnel of price ``3 delta`` from the rightmost gate seen
  in the columns to its left (rows below),

and keeps only the summary :class:`~shortcut_frechet.freespace.ReachSet`.
Six arrays of length ``n1`` carry everything between rows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .classic import bisect_decider, decide_frechet, vertex_distance_bound
from .freespace import Block, CellFreeSpace, reach_of_blocks, step1_neighbors
from .geom import EMPTY, Point, PolygonalCurve, dist, normalize_curve, tolerance
from .stabbing import Wedge, tunnel_disks

__all__ = [
    "Verdict",
    "Decision",
    "DeciderStats",
    "WitnessUnavailable",
    "decide_shortcut_3approx",
    "reconstruct_witness",
    "bisect_general",
]


class Verdict(enum.Enum):
    WithinThreeDelta = "WithinThreeDelta"
    ExceedsDelta = "ExceedsDelta"


class WitnessUnavailable(RuntimeError):
    pass


@dataclass
class DeciderStats:
    arrays_allocated: int = 0
    array_length: int = 0
    peak_array_slots: int = 0
    cells_visited: int = 0
    nonempty_cells: int = 0
    wedge_disks: int = 0
    stored_blocks: int = 0


class Decision(NamedTuple):
    verdict: Verdict
    witness: Optional[PolygonalCurve] = None
    stats: Optional[DeciderStats] = None

    @property
    def within(self) -> bool:
        return self.verdict is Verdict.WithinThreeDelta

    def __bool__(self) -> bool:
        return self.within


class _Gate(NamedTuple):
    x: float  # global grid coordinates
    y: float
    cell: tuple
    block: int


def _left_of(p: Optional[_Gate], q: Optional[_Gate]) -> Optional[_Gate]:
    if p is None:
        return q
    if q is None:
        return p
    if p.x != q.x:
        return p if p.x < q.x else q
    return p if p.y <= q.y else q


def _right_of(p: Optional[_Gate], q: Optional[_Gate]) -> Optional[_Gate]:
    if p is None:
        return q
    if q is None:
        return p
    if p.x != q.x:
        return p if p.x > q.x else q
    return p if p.y <= q.y else q


def _alloc(stats: DeciderStats, n: int, fill):
    stats.arrays_allocated += 1
    stats.array_length = max(stats.array_length, n)
    stats.peak_array_slots += n
    return [fill] * n


def _gate_of(pt: Optional[Point], blocks, fs, cell, left: bool) -> Optional[_Gate]:
    if pt is None:
        return None
    # remember which block produced the gate, for witness backtracking
    best = 0
    for k, blk in enumerate(blocks):
        e = fs.block_extreme(blk, left)
        if e is not None and e == pt:
            best = k
            break
    return _Gate(cell[0] + pt.x, cell[1] + pt.y, cell, best)


def decide_shortcut_3approx(
    T: PolygonalCurve,
    B: PolygonalCurve,
    delta: float,
    witness: bool = False,
    stats: Optional[DeciderStats] = None,
    trace: Optional[dict] = None,
    gate_log: Optional[dict] = None,
) -> Decision:
    """Decide between ``d_S(T, B) <= 3 delta`` and ``d_S(T, B) > delta``.

    With ``witness=True`` per-cell blocks are kept (quadratic memory) and a
    shortcut curve of ``B`` within ``3 delta`` of ``T`` is attached to a
    positive decision.  A ``trace`` dict receives the ReachSet of every
    reachable cell (for rendering).  ``gate_log`` maps every non-empty cell
    to the ``(vertical, diagonal)`` gates it tunnels from, as ``(x, y)`` grid
    points or ``None``.
    """
    if delta < 0:
        raise ValueError("delta must be non-negative")
    stats = stats if stats is not None else DeciderStats()
    r = delta + tolerance(delta)
    r3 = 3 * delta + tolerance(3 * delta)
    tv, bv = T.vertices, B.vertices
    n1, n2 = len(tv) - 1, len(bv) - 1
    if dist(tv[0], bv[0]) > r or dist(tv[-1], bv[-1]) > r:
        return Decision(Verdict.ExceedsDelta, None, stats)

    A_bar = _alloc(stats, n1, EMPTY)  # top reach of the previous row
    A = _alloc(stats, n1, EMPTY)
    gl_bar = _alloc(stats, n1, None)  # leftmost gate per column, rows below
    gl = _alloc(stats, n1, None)
    gr_bar = _alloc(stats, n1, None)  # rightmost gate in columns <= i, rows below
    gr = _alloc(stats, n1, None)
    store = {} if witness else None

    final = None
    for j in range(n2):
        left = EMPTY
        wedge_gate, wedge, wedge_upto = None, None, -1
        for i in range(n1):
            stats.cells_visited += 1
            fs = CellFreeSpace.of(T, B, i, j, r)
            if fs.empty:
                A[i] = EMPTY
                left = EMPTY
                gl[i] = gl_bar[i]
                gr[i] = _right_of(gr[i - 1] if i else None, gr_bar[i])
                if i == n1 - 1 and j == n2 - 1:
                    final = None
                continue
            stats.nonempty_cells += 1
            blocks = []
            if i == 0 and j == 0:
                blocks.append(Block(0.0, 0.0, 1.0, "first"))
            blocks += step1_neighbors(fs, A_bar[i] if j else EMPTY, left)
            if gate_log is not None:
                gate_log[(i, j)] = tuple(
                    None if h is None else (h.x, h.y) for h in (gl_bar[i], gr_bar[i - 1] if i else None)
                )
            g = gl_bar[i]
            if g is not None:
                blocks.append(Block(min(1.0, max(0.0, g.x - i)), 0.0, 1.0, "vertical", g))
            g = gr_bar[i - 1] if i else None
            if g is not None:
                if g is not wedge_gate:
                    wedge_gate, wedge, wedge_upto = g, Wedge(B.at_grid(g.y)), int(g.x)
                if wedge.state != "Empty":
                    for dk in tunnel_disks(T, max(g.x, wedge_upto), i, r3):
                        wedge.add(dk)
                        stats.wedge_disks += 1
                wedge_upto = max(wedge_upto, i)
                blocks += _diagonal_blocks(T, B, i, j, r3, wedge, g)
            rs = reach_of_blocks(blocks, fs)
            A[i] = rs.top
            left = rs.right
            gL = _gate_of(rs.gate_left, blocks, fs, (i, j), True) if not rs.empty else None
            gR = _gate_of(rs.gate_right, blocks, fs, (i, j), False) if not rs.empty else None
            gl[i] = _left_of(gl_bar[i], gL)
            gr[i] = _right_of(_right_of(gr[i - 1] if i else None, gr_bar[i]), gR)
            if trace is not None and not rs.empty:
                trace[(i, j)] = rs
            if store is not None and not rs.empty:
                store[(i, j)] = (blocks, rs)
                stats.stored_blocks += len(blocks)
            if i == n1 - 1 and j == n2 - 1:
                final = rs
        A_bar, A = A, A_bar
        gl_bar, gl = gl, gl_bar
        gr_bar, gr = gr, gr_bar

    ok = final is not None and (final.right.contains_tol(1.0) or final.top.contains_tol(1.0))
    verdict = Verdict.WithinThreeDelta if ok else Verdict.ExceedsDelta
    wit = None
    if ok and store is not None:
        wit = _backtrack(T, B, delta, r, r3, store)
    return Decision(verdict, wit, stats)


def _diagonal_blocks(T, B, i, j, r3, wedge: Wedge, g) -> list[Block]:
    if wedge.state == "Empty":
        return []
    slab = wedge.segment_slab(B.edge(j))
    if slab.empty:
        return []
    fs3 = CellFreeSpace.of(T, B, i, j, r3)
    m3 = fs3.band_extreme(slab.lo, slab.hi, True)
    if m3 is None:
        return []
    return [
        Block(0.0, slab.lo, slab.hi, "diagonal", g),
        Block(m3.x, slab.hi, 1.0, "diagonal-above", (g, (i + m3.x, j + m3.y))),
    ]


# ---------------------------------------------------------------------------
# witness


def _backtrack(T, B, delta, r, r3, store) -> PolygonalCurve:
    """Walk predecessors from ``(n1, n2)`` back to ``(0, 0)``.

    Each step is ``("walk", p, q)`` (keep ``B`` between the heights) or
    ``("jump", p, q)`` (shortcut segment).
    """
    n1, n2 = T.n_edges, B.n_edges
    steps = []
    q = (float(n1), float(n2))
    cell = (n1 - 1, n2 - 1)
    guard = 0
    while True:
        guard += 1
        if guard > 4 * (n1 + 1) * (n2 + 1) + 10:
            raise WitnessUnavailable("predecessor chain did not terminate")
        if q == (0.0, 0.0):
            break
        if cell not in store:
            raise WitnessUnavailable(f"no stored reach for cell {cell}")
        blocks, rs = store[cell]
        i, j = cell
        s, t = q[0] - i, q[1] - j
        fs = CellFreeSpace.of(T, B, i, j, r)
        order = sorted(range(len(blocks)), key=lambda k: (blocks[k].tag not in ("bottom", "left", "first"), k))
        for k in order:
            if fs.block_contains(blocks[k], s, t):
                blk = blocks[k]
                break
        else:
            raise WitnessUnavailable(f"point {q} not covered in cell {cell}")
        if blk.tag == "first":
            steps.append(("jump", (0.0, 0.0), q))
            break
        if blk.tag == "bottom":
            _, below = store[(i, j - 1)]
            p = (i + below.top.lo, float(j))
            steps.append(("walk", p, q))
            q, cell = p, (i, j - 1)
        elif blk.tag == "left":
            _, prev = store[(i - 1, j)]
            p = (float(i), j + prev.right.lo)
            steps.append(("walk", p, q))
            q, cell = p, (i - 1, j)
        elif blk.tag in ("vertical", "diagonal"):
            g = blk.src
            steps.append(("jump", (g.x, g.y), q))
            q, cell = (g.x, g.y), g.cell
        elif blk.tag == "diagonal-above":
            g, m = blk.src
            steps.append(("walk", m, q))
            steps.append(("jump", (g.x, g.y), m))
            q, cell = (g.x, g.y), g.cell
        else:  # pragma: no cover
            raise WitnessUnavailable(f"unknown block tag {blk.tag!r}")
    steps.reverse()
    pts = [B.vertices[0]]
    for kind, p, q in steps:
        if kind == "walk":
            for v in range(math.floor(p[1]) + 1, math.ceil(q[1])):
                pts.append(B.vertices[v])
        pts.append(B.at_grid(q[1]))
    try:
        W = normalize_curve(_drop_straight(pts))
    except ValueError as e:
        raise WitnessUnavailable(str(e)) from e
    if not decide_frechet(T, W, 3 * delta + 1e-9).feasible:
        raise WitnessUnavailable("reconstructed curve failed the Fréchet check")
    return W


def _drop_straight(pts):
    """Remove vertices lying inside the segment joining their neighbours."""
    out = [pts[0]]
    for k in range(1, len(pts) - 1):
        a, b, c = out[-1], pts[k], pts[k + 1]
        ux, uy = c[0] - a[0], c[1] - a[1]
        wx, wy = b[0] - a[0], b[1] - a[1]
        scale = max(1.0, abs(ux), abs(uy), abs(wx), abs(wy))
        cross = ux * wy - uy * wx
        dot = ux * wx + uy * wy
        if abs(cross) <= 1e-12 * scale * scale and 0.0 <= dot <= ux * ux + uy * uy:
            continue
        out.append(b)
    out.append(pts[-1])
    return out


def reconstruct_witness(T: PolygonalCurve, B: PolygonalCurve, delta: float) -> PolygonalCurve:
    d = decide_shortcut_3approx(T, B, delta, witness=True)
    if d.witness is None:
        raise WitnessUnavailable("decider did not report WithinThreeDelta")
    return d.witness


def bisect_general(T: PolygonalCurve, B: PolygonalCurve, tol: float) -> tuple[float, float]:
    """Bracket ``[lo, 3 hi]`` for ``d_S`` from bisection over the decider."""
    hi = bisect_decider(lambda d: decide_shortcut_3approx(T, B, d).within, vertex_distance_bound(T, B), tol)
    lo = max(0.0, hi - tol)
    return lo, 3 * hi
