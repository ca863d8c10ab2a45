"""The Quad: a single table where every orbit is periodic.

The filled vertex set is infinite, but the critical set closes after
finitely many segment splits, which bounds every period by 2(|C|^2 - |C|).
The phase space decomposes into finitely many rectangular tiles, each
carrying one symbolic trajectory; their areas add up to the full product
measure exactly.
"""

from collections import Counter

from symplectic_billiards import BranchAtlas, builtin, classify, critical_set, decompose
from symplectic_billiards.render import render_phase_decomposition
from symplectic_billiards.strata import c_grid, filled_set

T = builtin("quad")
atlas = BranchAtlas(T)

F = filled_set(T, max_points=400, max_rounds=30)
print("filled set:", F.status, "sizes:", F.sizes)

C = critical_set(T, 4000, atlas)
print("critical set:", C.status, "sizes:", C.sizes)
for ep in sorted(C.points[0]):
    print("   edge", ep.edge, "t =", ep.t)

tiles = decompose(T, C, atlas)
print("tiles:", len(tiles))
print("tile periods:", dict(Counter(t.period for t in tiles)))
print("return orders:", dict(Counter(t.return_order for t in tiles)))
print("total tile area:", sum(t.area(T) for t in tiles))

verdict = classify(T, samples=500)
print("classification:", verdict.label, "bound:", verdict.bound,
      "max sampled period:", verdict.sample_stats["max_period"])

svg = render_phase_decomposition(T, tiles=tiles, grid=c_grid(C))
with open("quad_tiles.svg", "w") as fh:
    fh.write(svg)
print("wrote quad_tiles.svg")
