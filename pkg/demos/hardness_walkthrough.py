"""Walk through the SUBSET-SUM reduction on a small instance.

Run: python demos/hardness_walkthrough.py [values] [sigma]
e.g. python demos/hardness_walkthrough.py 3,5,9 14
"""

import sys

from shortcut_frechet.hardness import (
    SubsetSumInstance,
    audit_construction,
    encoding_margin,
    enumerate_subsets,
    generate,
    one_touch_encoding,
)

values = tuple(int(v) for v in (sys.argv[1] if len(sys.argv) > 1 else "3,5,9").split(","))
sigma = int(sys.argv[2]) if len(sys.argv) > 2 else 14

c = generate(SubsetSumInstance(values, sigma))
print(f"instance s={values} sigma={sigma}")
print(f"params {c.params}")
print(f"T has {len(c.T)} vertices, B has {len(c.B)}; {len(c.mirrors)} mirror edges, {len(c.centers)} projection centres")

rep = audit_construction(c)
print(f"audits: {len(rep)} checks, {len(rep.failures())} failures")

print()
print("where each subset's one-touch curve lands on the last e* mirror:")
end = c.ends(c.mirror(len(values), "e*"))[1]
target = c.a_sigma
for mask in range(1 << len(values)):
    I = {i + 1 for i in range(len(values)) if mask >> i & 1}
    enc = one_touch_encoding(c, I)
    x = [v for v, (m, _) in zip(enc.vertices, enc.targets) if m is not None and m.name == "e*"][-1][0]
    dist, _ = encoding_margin(c, I)
    part = sum(values[i - 1] for i in I)
    print(f"  I={sorted(I)!s:<12} sum={part:<4} offset/gamma={(x - end) / c.params.gamma}  frechet~{dist:.6f}")
print(f"terminal point a_sigma = {target}")

count, good = enumerate_subsets(c)
print()
print(f"{count} subsets enumerated, {len(good)} feasible:", [sorted(g) for g in good])
