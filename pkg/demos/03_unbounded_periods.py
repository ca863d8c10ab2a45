"""The square-rhombus pair: fully periodic without a period bound.

The critical set accumulates at vertices with an exactly geometric split
cascade (ratio 1/2 here). Every sampled orbit is periodic, but seeds
marching into the far corner of the rhombus have longer and longer
periods, so no uniform bound exists.
"""

from symplectic_billiards import BranchAtlas, PhasePair, builtin, classify, scan_orbit
from symplectic_billiards.rational import rat
from symplectic_billiards.table import MINUS, PLUS, EdgePoint

T = builtin("square-rhombus")
atlas = BranchAtlas(T)

verdict = classify(T, samples=400, atlas=atlas)
print("label:", verdict.label)
for w in verdict.critical.witnesses[:4]:
    print("  cascade at vertex", T.point(w.vertex), "ratio", w.ratio)

x = EdgePoint(MINUS, 0, rat(1, 3))
print("seeds approaching the far corner (12,-1):")
for k in range(1, 13):
    y = EdgePoint(PLUS, 1, 1 - rat(1, 3 ** k))
    period, kind, _ = scan_orbit(T, PhasePair(x, y), 200000, atlas)
    print(f"   distance 3^-{k}: period {period}")
