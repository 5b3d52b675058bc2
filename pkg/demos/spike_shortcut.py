"""A noisy spike on the base curve, and how shortcuts remove it.

Run: python demos/spike_shortcut.py
"""

from shortcut_frechet import PolygonalCurve
from shortcut_frechet.classic import bisect_frechet, decide_frechet
from shortcut_frechet.decide_general import bisect_general, decide_shortcut_3approx
from shortcut_frechet.decide_vertex import bisect_vertex, decide_vertex


def pts(C):
    return [(round(p.x, 6), round(p.y, 6)) for p in C.vertices]


T = PolygonalCurve([(0, 0), (10, 0)])
B = PolygonalCurve([(0, 0), (5, 100), (10, 0)])

print("target T:", pts(T))
print("base B  :", pts(B))
print()
print(f"classic Frechet distance      ~ {bisect_frechet(T, B, 1e-6):.4f}")
print("a GPS-style outlier dominates the classic measure.")
print()
delta = 0.1
print(f"at delta={delta}:")
print("  classic decision         ", bool(decide_frechet(T, B, delta)))
print("  vertex-restricted shortcut", decide_vertex(T, B, delta))
dec = decide_shortcut_3approx(T, B, delta, witness=True)
print("  general 3-approx decider  ", dec.verdict.value)
print("  witness shortcut curve    ", pts(dec.witness))
print()
print(f"vertex shortcut distance      ~ {bisect_vertex(T, B, 1e-6):.6f}")
lo, hi = bisect_general(T, B, 1e-6)
print(f"general shortcut distance in  [{lo:.6f}, {hi:.6f}]")

# Overshooting a corner: only a cut in the middle of an edge helps.
T2 = PolygonalCurve([(0, 0), (10, 0), (10, 10)])
B2 = PolygonalCurve([(0, 0), (20, 0), (10, 10)])
print()
print("corner overshoot, delta=0.5:")
print("  vertex-restricted:", decide_vertex(T2, B2, 0.5))
d2 = decide_shortcut_3approx(T2, B2, 0.5, witness=True)
print("  general          :", d2.verdict.value, "witness", pts(d2.witness))
