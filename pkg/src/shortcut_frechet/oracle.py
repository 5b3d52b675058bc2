"""Slow, independent reference procedures used by the test-suite.

Nothing here is meant to be fast.  Sizes are capped so that a mistaken call
fails loudly instead of running for hours.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .classic import decide_frechet
from .decide_vertex import decide_vertex
from .geom import DegenerateCurve, Disk, PolygonalCurve, Segment, disk_segment_intersection, dist, normalize_curve, tolerance

__all__ = [
    "CurveTooLarge",
    "MAX_VERTICES",
    "MAX_K",
    "sample_curve",
    "discrete_frechet",
    "brute_frechet",
    "exhaustive_vertex_shortcut",
    "refine_curve",
    "refine_and_decide",
    "ordered_stab",
    "sampled_stabbing_directions",
]

MAX_VERTICES = 12
MAX_K = 256


class CurveTooLarge(ValueError):
    pass


def sample_curve(C: PolygonalCurve, k: int) -> np.ndarray:
    """``k`` evenly spaced samples per edge, shared vertices counted once."""
    V = np.asarray(C.vertices, dtype=float)
    t = np.linspace(0.0, 1.0, k)[:-1]
    pts = (V[:-1, None, :] * (1 - t)[None, :, None] + V[1:, None, :] * t[None, :, None]).reshape(-1, 2)
    return np.vstack([pts, V[-1:]])


def discrete_frechet(P: np.ndarray, Q: np.ndarray) -> float:
    """Discrete Fréchet distance by anti-diagonal dynamic programming."""
    D = np.sqrt(((P[:, None, :] - Q[None, :, :]) ** 2).sum(-1))
    m1, m2 = D.shape
    ca = np.full((m1, m2), np.inf)
    ca[0, 0] = D[0, 0]
    for s in range(1, m1 + m2 - 1):
        i = np.arange(max(0, s - m2 + 1), min(m1, s + 1))
        j = s - i
        best = np.full(i.shape, np.inf)
        m = i > 0
        best[m] = np.minimum(best[m], ca[i[m] - 1, j[m]])
        m = j > 0
        best[m] = np.minimum(best[m], ca[i[m], j[m] - 1])
        m = (i > 0) & (j > 0)
        best[m] = np.minimum(best[m], ca[i[m] - 1, j[m] - 1])
        ca[i, j] = np.maximum(D[i, j], best)
    return float(ca[-1, -1])


def _spacing(C: PolygonalCurve, k: int) -> float:
    return max(e.length for e in map(C.edge, range(C.n_edges))) / (k - 1)


def brute_frechet(T: PolygonalCurve, B: PolygonalCurve, k: int = 64) -> tuple[float, float]:
    """Bracket ``[lower, upper]`` on the continuous Fréchet distance."""
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > MAX_K or len(T) > MAX_VERTICES or len(B) > MAX_VERTICES:
        raise CurveTooLarge("oracle input above the size cap")
    upper = discrete_frechet(sample_curve(T, k), sample_curve(B, k))
    h = max(_spacing(T, k), _spacing(B, k))
    ends = max(dist(T[0], B[0]), dist(T[-1], B[-1]))
    return max(0.0, upper - h, ends), upper


def exhaustive_vertex_shortcut(T: PolygonalCurve, B: PolygonalCurve, delta: float) -> bool:
    """Try every vertex subsequence of ``B`` that keeps both endpoints."""
    m = len(B)
    if m > MAX_VERTICES:
        raise CurveTooLarge(f"B has {m} vertices (cap {MAX_VERTICES})")
    inner = list(range(1, m - 1))
    r = delta + tolerance(delta)
    for keep in itertools.product((False, True), repeat=len(inner)):
        idx = [0] + [v for v, kp in zip(inner, keep) if kp] + [m - 1]
        try:
            C = normalize_curve([B[v] for v in idx])
        except DegenerateCurve:
            if all(dist(p, B[0]) <= r for p in T):
                return True
            continue
        if decide_frechet(T, C, delta):
            return True
    return False


def refine_curve(B: PolygonalCurve, k: int) -> PolygonalCurve:
    """``k`` extra evenly spaced vertices on every edge."""
    if k < 0 or k > MAX_K:
        raise CurveTooLarge(f"refinement k={k} outside [0, {MAX_K}]")
    if k == 0:
        return B
    pts = []
    for e in range(B.n_edges):
        s = B.edge(e)
        pts.extend(s.at(q / (k + 1)) for q in range(k + 1))
    pts.append(B[-1])
    return normalize_curve(pts)


def refine_and_decide(T: PolygonalCurve, B: PolygonalCurve, delta: float, k: int) -> bool:
    return decide_vertex(T, refine_curve(B, k), delta)


def ordered_stab(apex, disks, q) -> bool:
    """Does the segment ``apex -> q`` meet ``disks`` in order?  Direct check."""
    seg = Segment(apex, q)
    pos = 0.0
    for dk in disks:
        iv = disk_segment_intersection(dk, seg)
        if iv.empty or iv.hi < pos:
            return False
        pos = max(pos, iv.lo)
    return True


def sampled_stabbing_directions(apex, disks, samples: int = 20000) -> list[float]:
    """Absolute ray directions (sampled) that stab ``disks`` in order."""
    out = []
    far = 1.0 + dist(apex, (0.0, 0.0)) + sum(dist(apex, d.center) + d.radius for d in disks)
    for k in range(samples):
        a = 2 * math.pi * k / samples
        q = (apex[0] + far * math.cos(a), apex[1] + far * math.sin(a))
        if ordered_stab(apex, disks, q):
            out.append(a)
    return out
