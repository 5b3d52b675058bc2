"""Shortcut Fréchet distance: deciders, oracles and the SUBSET-SUM reduction."""

from .classic import bisect_frechet, decide_frechet, decide_segment_curve
from .decide_general import Decision, Verdict, WitnessUnavailable, bisect_general, decide_shortcut_3approx, reconstruct_witness
from .decide_vertex import bisect_vertex, decide_vertex
from .geom import DegenerateCurve, Point, PolygonalCurve, Segment, normalize_curve, read_curve, write_curve
from .stabbing import Wedge, diagonal_tunnel, vertical_tunnel

__all__ = [
    "Point",
    "Segment",
    "PolygonalCurve",
    "DegenerateCurve",
    "normalize_curve",
    "read_curve",
    "write_curve",
    "decide_frechet",
    "bisect_frechet",
    "decide_segment_curve",
    "decide_shortcut_3approx",
    "reconstruct_witness",
    "bisect_general",
    "Decision",
    "Verdict",
    "WitnessUnavailable",
    "decide_vertex",
    "bisect_vertex",
    "Wedge",
    "diagonal_tunnel",
    "vertical_tunnel",
]
