"""Plane geometry primitives shared by the deciders.

Curves are parameterized uniformly per edge.  Internally every module works in
*grid coordinates*: a curve with ``m`` edges is parameterized over ``[0, m]``
and edge ``i`` covers ``[i, i + 1]``.  :meth:`PolygonalCurve.at` accepts the
normalized ``[0, 1]`` parameter for callers that prefer it.
"""

from __future__ import annotations

import math
from decimal import Context, Decimal
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "DegenerateCurve",
    "Point",
    "Segment",
    "Disk",
    "ParamInterval",
    "EMPTY",
    "PolygonalCurve",
    "normalize_curve",
    "tolerance",
    "dist",
    "point_segment_distance",
    "disk_segment_intersection",
    "segment_hippodrome_interval",
    "CurveFormatError",
    "parse_curve",
    "format_curve",
    "read_curve",
    "write_curve",
]

REL_TOL = 1e-9


class DegenerateCurve(ValueError):
    """Raised when a curve has fewer than two distinct vertices."""


class Point(NamedTuple):
    x: float
    y: float

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other.x, self.y - other.y)

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other.x, self.y + other.y)

    def scale(self, f: float) -> "Point":
        return Point(self.x * f, self.y * f)


class Segment(NamedTuple):
    a: Point
    b: Point

    def at(self, t: float) -> Point:
        (ax, ay), (bx, by) = self.a, self.b
        return Point(ax + t * (bx - ax), ay + t * (by - ay))

    @property
    def length(self) -> float:
        (ax, ay), (bx, by) = self.a, self.b
        return math.hypot(bx - ax, by - ay)


class Disk(NamedTuple):
    center: Point
    radius: float


class ParamInterval(NamedTuple):
    """Closed interval; ``lo > hi`` encodes the empty interval."""

    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, t: object) -> bool:
        return not self.empty and self.lo <= t <= self.hi  # type: ignore[operator]

    def intersect(self, other: "ParamInterval") -> "ParamInterval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return ParamInterval(lo, hi) if lo <= hi else EMPTY

    def hull(self, other: "ParamInterval") -> "ParamInterval":
        if self.empty:
            return other
        if other.empty:
            return self
        return ParamInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def shift(self, d: float) -> "ParamInterval":
        return self if self.empty else ParamInterval(self.lo + d, self.hi + d)

    def contains_tol(self, t: float, eps: float = 1e-12) -> bool:
        return not self.empty and self.lo - eps <= t <= self.hi + eps


EMPTY = ParamInterval(math.inf, -math.inf)


def tolerance(magnitude: float) -> float:
    """Hybrid absolute/relative tolerance used for predicate ties."""
    return REL_TOL * max(1.0, abs(magnitude))


def dist(p: Point, q: Point) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


class PolygonalCurve:
    """Immutable polygonal curve with at least one edge and no zero-length edges."""

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[Sequence[float]]):
        vs = tuple(Point(float(v[0]), float(v[1])) for v in vertices)
        if len(vs) < 2:
            raise DegenerateCurve(f"curve needs at least 2 vertices, got {len(vs)}")
        for p, q in zip(vs, vs[1:]):
            if p == q:
                raise DegenerateCurve(f"zero-length edge at {p}")
        for p in vs:
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ValueError(f"non-finite vertex {p}")
        self.vertices = vs

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PolygonalCurve) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"PolygonalCurve({list(map(tuple, self.vertices))!r})"

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    def edge(self, i: int) -> Segment:
        return Segment(self.vertices[i], self.vertices[i + 1])

    def at_grid(self, x: float) -> Point:
        """Point at grid parameter ``x`` in ``[0, n_edges]``."""
        m = self.n_edges
        if x <= 0:
            return self.vertices[0]
        if x >= m:
            return self.vertices[-1]
        i = int(x)
        return self.edge(i).at(x - i)

    def at(self, t: float) -> Point:
        """Point at normalized parameter ``t`` in ``[0, 1]``."""
        return self.at_grid(t * self.n_edges)

    def magnitude(self) -> float:
        return max(max(abs(p.x), abs(p.y)) for p in self.vertices)

    def subcurve(self, x0: float, x1: float) -> list[Point]:
        """Vertex list of the subcurve between grid parameters ``x0 <= x1``."""
        pts = [self.at_grid(x0)]
        for v in range(math.floor(x0) + 1, math.ceil(x1)):
            pts.append(self.vertices[v])
        end = self.at_grid(x1)
        if end != pts[-1] or len(pts) == 1:
            pts.append(end)
        return pts


def normalize_curve(raw: Iterable[Sequence[float]]) -> PolygonalCurve:
    """Collapse consecutive duplicate points; raise if fewer than two remain."""
    out: list[Point] = []
    for v in raw:
        p = Point(float(v[0]), float(v[1]))
        if not out or out[-1] != p:
            out.append(p)
    if len(out) < 2:
        raise DegenerateCurve("fewer than two distinct vertices")
    return PolygonalCurve(out)


def point_segment_distance(p: Point, s: Segment) -> float:
    ax, ay = s.a
    vx, vy = s.b[0] - ax, s.b[1] - ay
    wx, wy = p[0] - ax, p[1] - ay
    vv = vx * vx + vy * vy
    t = 0.0 if vv == 0 else min(1.0, max(0.0, (wx * vx + wy * vy) / vv))
    return math.hypot(wx - t * vx, wy - t * vy)


def _solve_disk(ax, ay, vx, vy, cx, cy, r):
    # roots of |a + t v - c|^2 = r^2, unclipped.  Written as closest point
    # plus/minus half chord: the line distance comes from a cross product and
    # keeps its accuracy for long segments passing near tangency.
    wx, wy = ax - cx, ay - cy
    A = vx * vx + vy * vy
    if A == 0.0:
        return (-math.inf, math.inf) if math.hypot(wx, wy) <= r else None
    L = math.sqrt(A)
    d = abs(vx * wy - vy * wx) / L
    if d > r:
        return None
    tm = -(vx * wx + vy * wy) / A
    half = math.sqrt((r - d) * (r + d)) / L
    return (tm - half, tm + half)


def disk_segment_intersection(d: Disk, s: Segment) -> ParamInterval:
    """Parameters ``t`` in ``[0, 1]`` with ``s(t)`` inside the closed disk."""
    (ax, ay), (bx, by) = s
    roots = _solve_disk(ax, ay, bx - ax, by - ay, d.center[0], d.center[1], d.radius)
    if roots is None:
        return EMPTY
    lo, hi = max(roots[0], 0.0), min(roots[1], 1.0)
    return ParamInterval(lo, hi) if lo <= hi else EMPTY


def segment_hippodrome_interval(s: Segment, other: Segment, r: float) -> ParamInterval:
    """Parameters of ``s`` within distance ``r`` of the segment ``other``.

    The radius-``r`` neighbourhood of ``other`` is convex, so the answer is a
    single interval: the hull of the two end-disk pieces and the strip piece.
    """
    (ax, ay), (bx, by) = s
    vx, vy = bx - ax, by - ay
    out = disk_segment_intersection(Disk(other.a, r), s)
    out = out.hull(disk_segment_intersection(Disk(other.b, r), s))
    (px, py), (qx, qy) = other
    ux, uy = qx - px, qy - py
    L2 = ux * ux + uy * uy
    if L2 == 0.0:
        return out
    L = math.sqrt(L2)
    # along-coordinate f(t) in [0, L2] and signed normal g(t) in [-r L, r L]
    lo, hi = 0.0, 1.0
    for c0, c1, bnd_lo, bnd_hi in (
        ((ax - px) * ux + (ay - py) * uy, vx * ux + vy * uy, 0.0, L2),
        ((ax - px) * uy - (ay - py) * ux, vx * uy - vy * ux, -r * L, r * L),
    ):
        if c1 == 0.0:
            if not (bnd_lo <= c0 <= bnd_hi):
                return out
            continue
        t0, t1 = (bnd_lo - c0) / c1, (bnd_hi - c0) / c1
        if t0 > t1:
            t0, t1 = t1, t0
        lo, hi = max(lo, t0), min(hi, t1)
        if lo > hi:
            return out
    return out.hull(ParamInterval(lo, hi))


# ---------------------------------------------------------------------------
# curve files


class CurveFormatError(ValueError):
    """Malformed curve file."""


def _parse_num(tok: str, exact: bool):
    if "/" in tok:
        num, den = tok.split("/", 1)
        f = Fraction(int(num), int(den))
        return f if exact else float(f)
    if exact:
        return Fraction(tok)
    v = float(tok)
    if not math.isfinite(v):
        raise CurveFormatError(f"non-finite coordinate {tok!r}")
    return v


def parse_curve(text: str, exact: bool = False):
    """Parse curve text; returns ``(name, points)``.

    Decimal and ``num/den`` tokens are both accepted.  With ``exact`` the
    coordinates come back as :class:`~fractions.Fraction`.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CurveFormatError("empty curve file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "curve":
        raise CurveFormatError(f"bad header {lines[0]!r}")
    try:
        n = int(head[2])
    except ValueError as e:
        raise CurveFormatError(f"bad vertex count {head[2]!r}") from e
    body = lines[1:]
    if len(body) != n:
        raise CurveFormatError(f"header announces {n} vertices, found {len(body)}")
    pts = []
    for ln in body:
        toks = ln.split()
        if len(toks) != 2:
            raise CurveFormatError(f"bad vertex line {ln!r}")
        try:
            pts.append((_parse_num(toks[0], exact), _parse_num(toks[1], exact)))
        except (ValueError, ZeroDivisionError) as e:
            raise CurveFormatError(f"bad coordinate in {ln!r}") from e
    return head[1], pts


def _fmt(v, digits: int) -> str:
    if isinstance(v, Fraction):
        if digits <= 0:
            return f"{v.numerator}/{v.denominator}"
        return _fraction_decimal(v, digits)
    return format(float(v), f".{digits or 17}g")


def _fraction_decimal(f: Fraction, digits: int) -> str:
    if f == 0:
        return "0"
    ctx = Context(prec=digits)
    return format(ctx.divide(Decimal(f.numerator), Decimal(f.denominator)), "f")


def format_curve(name: str, points, digits: int = 17) -> str:
    """Curve file text.  ``digits=0`` writes fractions as ``num/den``."""
    out = [f"curve {name} {len(points)}"]
    for x, y in points:
        out.append(f"{_fmt(x, digits)} {_fmt(y, digits)}")
    return "\n".join(out) + "\n"


def read_curve(path, exact: bool = False):
    with open(path, encoding="utf-8") as fh:
        return parse_curve(fh.read(), exact=exact)


def write_curve(path, name: str, points, digits: int = 17) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_curve(name, points, digits))
