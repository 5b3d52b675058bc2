"""SUBSET-SUM to shortcut-Fréchet reduction in exact rational arithmetic.

The target curve ``T`` lies on the x axis and makes a *twist* (a short
back-and-forth) around every projection center.  The base curve ``B``
consists of leftward horizontal *mirror* edges on ``y = 1``, ``y = -1`` and
``y = alpha`` joined by connector edges that leave the unit neighbourhood of
``T`` wherever they can.  A feasible shortcut curve has to cross every twist
through its center, so the point where it touches one mirror edge determines,
by central projection, where it touches the next one.

Everything here is :class:`~fractions.Fraction` valued; :func:`audit_construction`
checks the geometric invariants with zero tolerance.
"""

from __future__ import annotations

import copy
import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Iterable, Optional, Sequence

from .classic import bisect_frechet, decide_frechet
from .geom import PolygonalCurve

__all__ = [
    "ParamViolation",
    "SubsetSumInstance",
    "GadgetParams",
    "Mirror",
    "Center",
    "Construction",
    "OneTouchEncoding",
    "AuditEntry",
    "generate",
    "one_touch_encoding",
    "verify_encoding",
    "encoding_margin",
    "audit_construction",
    "enumerate_subsets",
    "mutation_targets",
    "mutate",
]

XL = Q(-10)  # x of the detour column left of everything
Y_OUT = Q(3)  # connector rows, well outside the unit neighbourhood of T


class ParamViolation(ValueError):
    pass


@dataclass(frozen=True)
class SubsetSumInstance:
    s: tuple
    sigma: int

    def __post_init__(self):
        if not self.s:
            raise ParamViolation("need at least one value")
        if any(int(v) != v or v < 1 for v in self.s):
            raise ParamViolation("values must be positive integers")
        if int(self.sigma) != self.sigma or self.sigma < 1:
            raise ParamViolation("sigma must be a positive integer")

    @property
    def n(self) -> int:
        return len(self.s)


@dataclass(frozen=True)
class GadgetParams:
    alpha: Q
    beta: Q
    zeta: Q
    gamma: Q

    @classmethod
    def default(cls, n: int) -> "GadgetParams":
        return cls(Q(1, 2), Q(5), Q(5), Q(25 * n))

    def validate(self, n: int) -> None:
        if not (Q(1, 2) <= self.alpha < 1):
            raise ParamViolation(f"alpha={self.alpha} outside [1/2, 1)")
        if not self.beta > 4:
            raise ParamViolation(f"beta={self.beta} must exceed 4")
        if not self.zeta > 4:
            raise ParamViolation(f"zeta={self.zeta} must exceed 4")
        if not self.gamma >= 25 * n:
            raise ParamViolation(f"gamma={self.gamma} below 25n={25 * n}")


@dataclass
class Mirror:
    gadget: int
    name: str  # "e*", "e1", "eb1", ...
    y: Q
    index: int  # B edge index (start vertex)


@dataclass
class Center:
    gadget: int
    name: str  # "p1".."p4"
    x: Q
    t_index: int  # index of the first twist vertex in T


@dataclass
class Construction:
    inst: SubsetSumInstance
    params: GadgetParams
    T: list
    B: list
    mirrors: list = field(default_factory=list)
    centers: list = field(default_factory=list)
    a_sigma: Q = Q(0)
    p_sigma: Q = Q(0)
    steps: dict = field(default_factory=dict)  # gadget -> {"lambda": .., "phi": ..}

    def mirror(self, gadget: int, name: str) -> Mirror:
        for m in self.mirrors:
            if m.gadget == gadget and m.name == name:
                return m
        raise KeyError((gadget, name))

    def ends(self, m: Mirror):
        """(start, end) x-coordinates of a mirror edge; start is the right end."""
        return self.B[m.index][0], self.B[m.index + 1][0]

    def center(self, gadget: int, name: str) -> Center:
        for c in self.centers:
            if c.gadget == gadget and c.name == name:
                return c
        raise KeyError((gadget, name))

    def mirror_edges(self) -> set:
        return {m.index for m in self.mirrors}

    def connector_edges(self) -> list:
        mi = self.mirror_edges()
        return [k for k in range(len(self.B) - 1) if k not in mi]

    def zones(self):
        """Open buffer rectangles ``(x_lo, x_hi, y_lo, y_hi)``."""
        h = self.params.zeta / 2
        return [(c.x - h, c.x + h, Q(-3, 2), Q(3, 2)) for c in self.centers]

    def curves(self) -> tuple[PolygonalCurve, PolygonalCurve]:
        return PolygonalCurve(self.T), PolygonalCurve(self.B)

    def metadata(self) -> dict:
        def f(v: Q) -> str:
            return f"{v.numerator}/{v.denominator}"

        return {
            "values": list(self.inst.s),
            "sigma": self.inst.sigma,
            "params": {k: f(getattr(self.params, k)) for k in ("alpha", "beta", "zeta", "gamma")},
            "mirrors": [
                {"gadget": m.gadget, "name": m.name, "y": f(m.y), "start": f(self.ends(m)[0]), "end": f(self.ends(m)[1]), "edge": m.index}
                for m in self.mirrors
            ],
            "centers": [{"gadget": c.gadget, "name": c.name, "x": f(c.x), "twist_vertex": c.t_index} for c in self.centers],
            "zones": [[f(v) for v in z] for z in self.zones()],
            "a_sigma": f(self.a_sigma),
            "p_sigma": f(self.p_sigma),
            "steps": {str(k): {kk: f(vv) for kk, vv in v.items()} for k, v in self.steps.items()},
        }


def project(x: Q, ys: Q, p: Q, yt: Q) -> Q:
    """x-coordinate of the projection of ``(x, ys)`` through ``(p, 0)`` onto ``y = yt``."""
    return p + (x - p) * yt / ys


# ---------------------------------------------------------------------------
# construction


def _leave(y: Q) -> Q:
    return -Y_OUT if y == -1 else Y_OUT


def _arrive(y: Q) -> Q:
    return Y_OUT if y == 1 else -Y_OUT


class _BBuilder:
    def __init__(self, start):
        self.pts = [start]
        self.mirrors: list[Mirror] = []

    def to(self, x: Q, y: Q):
        if (x, y) != self.pts[-1]:
            self.pts.append((x, y))

    def mirror(self, gadget: int, name: str, y: Q, x_start: Q, x_end: Q):
        if not x_end < x_start:
            raise AssertionError(f"mirror {name}^{gadget} is not leftward")
        cx, cy = self.pts[-1]
        ya = _arrive(y)
        if cy != y or cx != x_start:
            ly = cy if abs(cy) == Y_OUT else None
            if ly is None:
                # leaving the previous mirror edge
                ly = _leave(cy)
                self.to(cx, ly)
            if ly != ya:
                self.to(XL, ly)
                self.to(XL, ya)
            self.to(x_start, ya)
            self.to(x_start, y)
        self.mirrors.append(Mirror(gadget, name, y, len(self.pts) - 1))
        self.pts.append((x_end, y))


def generate(inst: SubsetSumInstance, params: Optional[GadgetParams] = None) -> Construction:
    """Build ``T`` and ``B`` for the instance in one left-to-right pass."""
    params = params or GadgetParams.default(inst.n)
    params.validate(inst.n)
    total = sum(inst.s)
    if inst.sigma > total:
        raise ParamViolation(f"sigma={inst.sigma} exceeds the total {total}")
    al, be, ze, ga = params.alpha, params.beta, params.zeta, params.gamma
    h = ze / 2
    one, m1 = Q(1), Q(-1)

    centers: list[tuple[int, str, Q]] = []
    steps = {}
    b = _BBuilder((Q(0), one))
    b.to(XL, one)  # start by running left on y = 1

    p10 = Q(0) + ga + h
    centers.append((0, "p1", p10))
    a_s, b_s = p10 + 2 * ga + h, p10 + h
    b.to(XL, -Y_OUT)
    b.mirror(0, "e*", m1, a_s, b_s)

    for i, s in enumerate(inst.s, start=1):
        lam = a_s - b_s
        phi = a_s + lam + be
        # step 1
        p1 = a_s + (lam + be) / (1 - al)
        a1, b1 = 2 * p1 - b_s, 2 * p1 - a_s
        c1, d1 = p1 + al * (p1 - b_s), p1 + al * (p1 - a_s)
        # step 2
        p2 = a1 + h
        b2, a2 = 2 * p2 - a1, 2 * p2 - b1
        d2, c2 = p2 + (p2 - c1) / al, p2 + (p2 - d1) / al
        # step 3
        p3 = d2 + p2 - b1
        a3, b3 = p3 + al * (p3 - b2), p3 + al * (p3 - a2)
        c3, d3 = 2 * p3 - d2, 2 * p3 - c2
        # step 4
        p4 = (a3 - al * c3 + al * ga * s) / (1 - al)
        b4, a4 = p4 + (p4 - a3) / al, p4 + (p4 - b3) / al
        d4, c4 = 2 * p4 - c3, 2 * p4 - d3
        centers += [(i, "p1", p1), (i, "p2", p2), (i, "p3", p3), (i, "p4", p4)]
        steps[i] = {"lambda": lam, "phi": phi, "b4": b4, "c4": c4}
        b.mirror(i, "e1", one, a1, b1)
        b.mirror(i, "eb1", al, c1, d1)
        b.mirror(i, "eb2", m1, c2, d2)
        b.mirror(i, "e2", m1, a2, b2)
        b.mirror(i, "e3", al, a3, b3)
        b.mirror(i, "eb3", one, c3, d3)
        b.mirror(i, "e*", m1, a4, d4)
        a_s, b_s = a4, d4

    n = inst.n
    pt = a_s + h
    centers.append((n + 1, "p1", pt))
    p_sigma = b_s + ga * (inst.sigma + 1)
    a_sigma = project(p_sigma, m1, pt, one)
    XR = a_sigma + 10
    b.to(b_s, -Y_OUT)
    b.to(XR, -Y_OUT)
    b.to(XR, one)
    b.to(a_sigma, one)

    T = [(Q(0), Q(0))]
    cen = []
    for g, name, x in centers:
        cen.append(Center(g, name, x, len(T)))
        T += [(x - 1, Q(0)), (x + 1, Q(0)), (x - 1, Q(0)), (x + 1, Q(0))]
    T.append((a_sigma, Q(0)))

    for P in (T, b.pts):
        for u, v in zip(P, P[1:]):
            if u == v:
                raise AssertionError("zero-length edge in construction")
    return Construction(inst, params, T, b.pts, b.mirrors, cen, a_sigma, p_sigma, steps)


# ---------------------------------------------------------------------------
# one-touch encodings


@dataclass
class OneTouchEncoding:
    I: frozenset
    vertices: list  # exact points
    targets: list  # (mirror or None, center or None) that produced each vertex

    def curve(self) -> PolygonalCurve:
        return PolygonalCurve(self.vertices)


def _route(c: Construction, i: int, chosen: bool):
    """Mirror names visited in gadget ``i`` by a one-touch encoding."""
    return ("e1", "e2", "e3", "e*") if chosen else ("eb1", "eb2", "eb3", "e*")


def one_touch_encoding(c: Construction, I: Iterable[int]) -> OneTouchEncoding:
    I = frozenset(I)
    if not I <= set(range(1, c.inst.n + 1)):
        raise ValueError(f"index set {sorted(I)} not within 1..{c.inst.n}")
    v = c.B[0]
    verts, tgts = [v], [(None, None)]
    m0 = c.mirror(0, "e*")
    p = c.center(0, "p1")
    v = (project(v[0], v[1], p.x, m0.y), m0.y)
    verts.append(v)
    tgts.append((m0, p))
    for i in range(1, c.inst.n + 1):
        for k, name in enumerate(_route(c, i, i in I), start=1):
            m = c.mirror(i, name)
            p = c.center(i, f"p{k}")
            v = (project(v[0], v[1], p.x, m.y), m.y)
            verts.append(v)
            tgts.append((m, p))
    verts.append((c.a_sigma, Q(1)))
    tgts.append((None, c.center(c.inst.n + 1, "p1")))
    return OneTouchEncoding(I, verts, tgts)


def _incidence_ok(c: Construction, enc: OneTouchEncoding) -> bool:
    """Exact check: every vertex sits on its mirror edge, every step crosses its center."""
    for k in range(1, len(enc.vertices)):
        m, p = enc.targets[k]
        u, v = enc.vertices[k - 1], enc.vertices[k]
        if m is not None:
            xs, xe = c.ends(m)
            if not (v[1] == m.y and xe <= v[0] <= xs):
                return False
        if p is not None and m is not None and not _collinear(u, (p.x, Q(0)), v):
            return False
    return True


def verify_encoding(c: Construction, I: Iterable[int], delta: float = 1.0) -> bool:
    """Fréchet test (binary64) of the one-touch encoding of ``I`` against ``T``.

    The vertex-to-center incidences of the encoding are checked exactly first;
    a failure there means the construction itself is broken.
    """
    enc = one_touch_encoding(c, I)
    if not _incidence_ok(c, enc):
        raise AssertionError(f"one-touch encoding of {sorted(enc.I)} leaves its mirror edges")
    T, _ = c.curves()
    return decide_frechet(T, enc.curve(), delta).feasible


def encoding_margin(c: Construction, I: Iterable[int], delta: float = 1.0, margin: float = 1e-6, tol: float = 1e-9):
    """``(distance, clear)``: bisected Fréchet distance of the encoding, and
    whether it stays at least ``margin`` away from ``delta``."""
    enc = one_touch_encoding(c, I)
    T, _ = c.curves()
    W = enc.curve()
    below = decide_frechet(T, W, delta - margin).feasible
    above = not decide_frechet(T, W, delta + margin).feasible
    d = bisect_frechet(T, W, tol)
    return d, below or above


def enumerate_subsets(c: Construction):
    """All index sets whose encodings verify, in lexicographic order of size."""
    n = c.inst.n
    out = []
    count = 0
    for k in range(n + 1):
        for I in itertools.combinations(range(1, n + 1), k):
            count += 1
            if verify_encoding(c, I):
                out.append(frozenset(I))
    return count, out


# ---------------------------------------------------------------------------
# exact geometry helpers


def _cross(o, a, b) -> Q:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _collinear(a, b, c) -> bool:
    return _cross(a, b, c) == 0


def _clip_convex(p0, p1, poly) -> Optional[tuple[Q, Q]]:
    """Parameter range of segment ``p0 p1`` inside a closed convex polygon (CCW)."""
    t0, t1 = Q(0), Q(1)
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    k = len(poly)
    for e in range(k):
        a, b = poly[e], poly[(e + 1) % k]
        # inside: cross(a, b, q) >= 0
        f0 = _cross(a, b, p0)
        fd = (b[0] - a[0]) * dy - (b[1] - a[1]) * dx
        if fd == 0:
            if f0 < 0:
                return None
            continue
        t = -f0 / fd
        if fd > 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
        if t0 > t1:
            return None
    return t0, t1


def _seg_overlap(p0, p1, a, b) -> Optional[tuple[Q, Q]]:
    """Parameter range of ``p0 p1`` lying on the closed segment ``a b``."""
    if _cross(a, b, p0) != 0 or _cross(a, b, p1) != 0:
        # proper or touching crossing
        d1, d2 = _cross(a, b, p0), _cross(a, b, p1)
        d3, d4 = _cross(p0, p1, a), _cross(p0, p1, b)
        if (d1 > 0) == (d2 > 0) and d1 != 0 and d2 != 0:
            return None
        if (d3 > 0) == (d4 > 0) and d3 != 0 and d4 != 0:
            return None
        t = d1 / (d1 - d2)
        return t, t
    # collinear
    ux, uy = p1[0] - p0[0], p1[1] - p0[1]
    uu = ux * ux + uy * uy
    ta = ((a[0] - p0[0]) * ux + (a[1] - p0[1]) * uy) / uu
    tb = ((b[0] - p0[0]) * ux + (b[1] - p0[1]) * uy) / uu
    lo, hi = max(Q(0), min(ta, tb)), min(Q(1), max(ta, tb))
    return (lo, hi) if lo <= hi else None


def _at(p0, p1, t):
    return (p0[0] + t * (p1[0] - p0[0]), p0[1] + t * (p1[1] - p0[1]))


def _pt_seg_d2(p, a, b) -> Q:
    ux, uy = b[0] - a[0], b[1] - a[1]
    uu = ux * ux + uy * uy
    t = Q(0) if uu == 0 else min(Q(1), max(Q(0), ((p[0] - a[0]) * ux + (p[1] - a[1]) * uy) / uu))
    qx, qy = a[0] + t * ux - p[0], a[1] + t * uy - p[1]
    return qx * qx + qy * qy


def _seg_seg_d2(p0, p1, a, b) -> Q:
    if _seg_overlap(p0, p1, a, b) is not None:
        return Q(0)
    return min(_pt_seg_d2(p0, a, b), _pt_seg_d2(p1, a, b), _pt_seg_d2(a, p0, p1), _pt_seg_d2(b, p0, p1))


def _open_box_hit(p0, p1, box) -> bool:
    x0, x1, y0, y1 = box
    poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    if p0 == p1:
        return x0 < p0[0] < x1 and y0 < p0[1] < y1
    r = _clip_convex(p0, p1, poly)
    if r is None:
        return False
    mx, my = _at(p0, p1, (r[0] + r[1]) / 2)
    return x0 < mx < x1 and y0 < my < y1


# ---------------------------------------------------------------------------
# audits


@dataclass
class AuditEntry:
    check: str
    gadget: int
    passed: bool
    detail: str = ""


class AuditReport(list):
    @property
    def passed(self) -> bool:
        return all(e.passed for e in self)

    def failures(self) -> list:
        return [e for e in self if not e.passed]


# projections per gadget: (center, source mirror, target mirror, [(source end, target end)])
# ends are "s" (start, right) and "e" (end, left); None targets are points inside e*
_PROJ = [
    ("p1", "e*-", "e1", [("e", "s"), ("s", "e")]),
    ("p1", "e*-", "eb1", [("e", "s"), ("s", "e")]),
    ("p2", "e1", "e2", [("s", "e"), ("e", "s")]),
    ("p2", "eb1", "eb2", [("s", "e"), ("e", "s")]),
    ("p3", "e2", "e3", [("e", "s"), ("s", "e")]),
    ("p3", "eb2", "eb3", [("e", "s"), ("s", "e")]),
    ("p4", "e3", "e*", [("e", "s")]),
    ("p4", "eb3", "e*", [("s", "e")]),
]


def _mir(c: Construction, i: int, name: str) -> Mirror:
    return c.mirror(i - 1, "e*") if name == "e*-" else c.mirror(i, name)


def audit_construction(c: Construction) -> AuditReport:
    """Exact pass/fail for every structural claim the reduction relies on."""
    rep = AuditReport()
    P = c.params
    al, be, ze, ga = P.alpha, P.beta, P.zeta, P.gamma
    n = c.inst.n
    add = lambda name, g, ok, detail="": rep.append(AuditEntry(name, g, bool(ok), detail))

    # mirrors are horizontal leftward edges on the three lines, in the documented order
    for m in c.mirrors:
        (xs, ys), (xe, ye) = c.B[m.index], c.B[m.index + 1]
        add("mirror-horizontal", m.gadget, ys == ye == m.y and m.y in (Q(1), Q(-1), al) and xe < xs, f"{m.name}")
    order = ["e1", "eb1", "eb2", "e2", "e3", "eb3", "e*"]
    idx = [c.mirror(0, "e*").index]
    for i in range(1, n + 1):
        idx += [c.mirror(i, nm).index for nm in order]
    add("mirror-order", -1, idx == sorted(idx) and len(set(idx)) == len(idx))

    # start and end
    add("start", 0, c.T[0] == (0, 0) and c.B[0] == (0, 1))
    add("end", n + 1, c.T[-1] == (c.a_sigma, 0) and c.B[-1] == (c.a_sigma, 1) and c.B[-2][0] > c.a_sigma and c.B[-2][1] == 1)

    # target curve: four-vertex twists, rightward between them
    xs = [v[0] for v in c.T]
    ok = all(v[1] == 0 for v in c.T)
    for cen in c.centers:
        k = cen.t_index
        ok_t = [c.T[k + q][0] for q in range(4)] == [cen.x - 1, cen.x + 1, cen.x - 1, cen.x + 1]
        add("twist", cen.gadget, ok_t, cen.name)
    link = [0] + [cen.t_index + 3 for cen in c.centers]
    nxt = [cen.t_index for cen in c.centers] + [len(c.T) - 1]
    ok = ok and all(xs[u] < xs[v] for u, v in zip(link, nxt))
    add("target-monotone", -1, ok)

    # centers follow their placement rules
    p10 = c.center(0, "p1").x
    add("center-rule", 0, p10 == ga + ze / 2)
    e0s, e0e = c.ends(c.mirror(0, "e*"))
    add("init-mirror", 0, e0e == p10 + ze / 2 and e0s == p10 + 2 * ga + ze / 2)
    v0 = project(c.B[0][0], c.B[0][1], p10, Q(-1))
    add("init-projection", 0, v0 - e0e == ga)
    for i in range(1, n + 1):
        a1, b1 = c.ends(c.mirror(i, "e1"))
        ps, pe = c.ends(c.mirror(i - 1, "e*"))
        add("center-rule", i, c.center(i, "p2").x == a1 + ze / 2, "p2")
        lam = ps - pe
        add("center-rule", i, c.center(i, "p1").x == ps + (lam + be) / (1 - al), "p1")
    pn = c.center(n + 1, "p1").x
    an, bn = c.ends(c.mirror(n, "e*"))
    add("center-rule", n + 1, pn == an + ze / 2)

    # projection identities, including the length ratio
    for i in range(1, n + 1):
        for cname, src, dst, pairs in _PROJ:
            p = c.center(i, cname).x
            ms, md = _mir(c, i, src), _mir(c, i, dst)
            se = dict(zip("se", c.ends(ms)))
            de = dict(zip("se", c.ends(md)))
            ok = True
            for u, v in pairs:
                x2 = project(se[u], ms.y, p, md.y)
                ok = ok and x2 == de[v] and _collinear((se[u], ms.y), (p, Q(0)), (de[v], md.y))
            if len(pairs) == 2:
                ok = ok and (de["s"] - de["e"]) * abs(ms.y) == (se["s"] - se["e"]) * abs(md.y)
            add("projection", i, ok, f"{cname}:{src}->{dst}")

    # estar: b4 - d4 = gamma s_i and d4 = b*
    total = 0
    for i, s in enumerate(c.inst.s, start=1):
        p4 = c.center(i, "p4").x
        a3, _ = c.ends(c.mirror(i, "e3"))
        b4 = project(a3, al, p4, Q(-1))
        es, ee = c.ends(c.mirror(i, "e*"))
        add("estar", i, b4 - ee == ga * s and ee <= b4 <= es)
        total += s
        add("edge-length", i, es - ee == ga * (total + 2))
    add("edge-length", 0, e0s - e0e == 2 * ga)

    # beta separations between mirror edges sharing a gap between buffer zones
    for i in range(1, n + 1):
        E = lambda nm: c.ends(c.mirror(i, nm))
        add("beta", i, E("e1")[1] - E("eb1")[0] >= be, "b1-c1")
        add("beta", i, E("eb2")[1] - E("e2")[0] >= be, "d2-a2")
        add("beta", i, E("e3")[1] - E("eb3")[0] >= be, "b3-c3")

    # buffer zones are never entered by B
    zones = c.zones()
    for zi, z in enumerate(zones):
        hit = [k for k in range(len(c.B) - 1) if _open_box_hit(c.B[k], c.B[k + 1], z)]
        add("zones", c.centers[zi].gadget, not hit, f"{c.centers[zi].name} edges={hit}")

    # terminal projection
    add("terminal", n + 1, c.p_sigma == bn + ga * (c.inst.sigma + 1) and _collinear((c.p_sigma, Q(-1)), (pn, Q(0)), (c.a_sigma, Q(1))))

    # connectors stay clear of every projection cone inside the hippodrome
    for g, cname, cone in _cones(c):
        bad = _connector_hits(c, cone)
        add("connectors", g, not bad, f"{cname} edges={bad}")
    return rep


def _cones(c: Construction):
    """Far-side projection regions ``(gadget, center, polygon)`` inside ``|y| <= 1``."""
    out = []
    p = c.center(0, "p1").x
    start = c.B[0]
    out.append((0, "p1", [(p, Q(0)), (project(start[0], start[1], p, -start[1]), -start[1])]))
    for i in range(1, c.inst.n + 2):
        for cname, src, dst, _ in _PROJ:
            if i == c.inst.n + 1 and (cname, dst) != ("p1", "e1"):
                continue  # the terminal center only sees e*^n
            pc = c.center(i, cname).x
            ms = _mir(c, i, src)
            yt = Q(-1) if ms.y > 0 else Q(1)
            xs, xe = c.ends(ms)
            u, v = project(xs, ms.y, pc, yt), project(xe, ms.y, pc, yt)
            tri = [(pc, Q(0)), (u, yt), (v, yt)]
            if _cross(*tri) < 0:
                tri = [tri[0], tri[2], tri[1]]
            out.append((i, cname, tri))
    return out


def _connector_hits(c: Construction, cone) -> list:
    endpoints = set()
    for m in c.mirrors:
        endpoints.add(c.B[m.index])
        endpoints.add(c.B[m.index + 1])
    tline = ((Q(0), Q(0)), (c.a_sigma, Q(0)))
    bad = []
    # the closing edge runs along y = 1 right of T's end; the "end" audit covers it
    for k in c.connector_edges()[:-1]:
        p0, p1 = c.B[k], c.B[k + 1]
        r = _seg_overlap(p0, p1, *cone) if len(cone) == 2 else _clip_convex(p0, p1, cone)
        if r is None:
            continue
        q0, q1 = _at(p0, p1, r[0]), _at(p0, p1, r[1])
        if _seg_seg_d2(q0, q1, *tline) > 1:
            continue
        if q0 == q1 and q0 in endpoints:
            continue
        bad.append(k)
    return bad


# ---------------------------------------------------------------------------
# mutation testing


def mutation_targets(c: Construction) -> list:
    """Load-bearing coordinates: ``(kind, key, axis)``."""
    out = []
    for m in c.mirrors:
        for end in (0, 1):
            out.append(("mirror", (m.gadget, m.name, end), 0))
            out.append(("mirror", (m.gadget, m.name, end), 1))
    for cen in c.centers:
        out.append(("center", (cen.gadget, cen.name), 0))
        for q in range(4):
            out.append(("twist", (cen.gadget, cen.name, q), 0))
    out.append(("start", "B", 0))
    out.append(("start", "B", 1))
    out.append(("end", "T", 0))
    out.append(("end", "B", 0))
    return out


def mutate(c: Construction, target, delta=Q(1)) -> Construction:
    """Copy of ``c`` with one coordinate shifted, consistently in curve and metadata."""
    c2 = copy.deepcopy(c)
    kind, key, axis = target

    def bump(P, k):
        v = list(P[k])
        v[axis] += delta
        P[k] = tuple(v)

    if kind == "mirror":
        g, name, end = key
        m = c2.mirror(g, name)
        bump(c2.B, m.index + end)
        if axis == 1:
            pass  # metadata y stays; the edge is no longer on its line
    elif kind == "center":
        cen = c2.center(*key)
        cen.x += delta
        for q in range(4):
            bump(c2.T, cen.t_index + q)
    elif kind == "twist":
        g, name, q = key
        bump(c2.T, c2.center(g, name).t_index + q)
    elif kind == "start":
        bump(c2.B, 0)
    elif kind == "end":
        P = c2.T if key == "T" else c2.B
        bump(P, len(P) - 1)
        if key == "T":
            pass
    else:
        raise ValueError(kind)
    return c2
