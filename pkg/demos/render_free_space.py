"""Write SVG pictures of a shortcut instance and of a small hardness gadget.

Run: python demos/render_free_space.py [outdir]
"""

import sys
from pathlib import Path

from shortcut_frechet import PolygonalCurve
from shortcut_frechet.decide_general import decide_shortcut_3approx
from shortcut_frechet.hardness import SubsetSumInstance, generate
from shortcut_frechet.render import render_svg

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
out.mkdir(parents=True, exist_ok=True)

T = PolygonalCurve([(0, 0), (3, 1), (6, 0), (10, 0)])
B = PolygonalCurve([(0, 0.5), (2, 1), (4, 8), (5, 1), (8, -6), (9, 0), (10, 0)])
delta = 1.0
trace = {}
dec = decide_shortcut_3approx(T, B, delta, witness=True, trace=trace)
svg = render_svg(T, B, delta=delta, witness=dec.witness, gates=trace)
(out / "shortcut.svg").write_text(svg)
print(f"verdict {dec.verdict.value}, {len(trace)} reachable cells -> {out / 'shortcut.svg'}")

c = generate(SubsetSumInstance((1, 2), 3))
Tc, Bc = c.curves()
svg = render_svg(Tc, Bc, delta=1.0, zones=c.zones(), free_space=False)
(out / "hardness.svg").write_text(svg)
print(f"hardness instance with {len(c.zones())} buffer zones -> {out / 'hardness.svg'}")
