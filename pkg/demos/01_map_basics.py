"""First steps: the billiard map on a pair of polygons.

The state is a pair (x, y) of boundary points on opposite tables; the map
sends it to (y, z) where the chord from x to z is parallel to the edge
containing y and interior to x's polygon. Everything below is exact
rational arithmetic.
"""

from symplectic_billiards import PhasePair, builtin, iterate, rat, step
from symplectic_billiards.rational import rat_str
from symplectic_billiards.table import MINUS, PLUS

T = builtin("square-rhombus")
print("tables:", T)

x = T.edge_point(MINUS, 1, rat(1, 3))  # on the square
y = T.edge_point(PLUS, 0, rat(2, 5))  # on the rhombus
print("seed:", T.point(x), T.point(y))

out = step(T, PhasePair(x, y))
print("one step ->", out.kind, "z =", T.point(out.pair.y))

traj, sym = iterate(T, PhasePair(x, y), 2000)
print("period:", traj.period)
print("edges visited:", [(["minus", "plus"][s.table], s.index) for s in sym.symbols[:10]], "...")
evens = traj.points[traj.seed_index::2]
print("even trajectory (square side):")
for p in evens[: traj.period // 2 if traj.period else 6]:
    px, py = T.point(p)
    print("   ", rat_str(px), rat_str(py))
